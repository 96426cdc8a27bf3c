#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace eegtda {

struct RipsEdge {
    std::uint32_t i = 0;  // i < j
    std::uint32_t j = 0;
    double length = 0.0;
};

/// Edges of a Vietoris-Rips filtration sorted by (length, i, j). A simplex
/// enters at the length of its longest edge.
struct RipsFiltration {
    std::vector<RipsEdge> edges;
    std::size_t point_count = 0;
    double max_length = 0.0;
    Eigen::MatrixXd distances;  // full pairwise distance matrix
};

struct PersistencePair {
    int dimension = 0;
    double birth = 0.0;
    double death = std::numeric_limits<double>::infinity();

    bool essential() const noexcept { return death == std::numeric_limits<double>::infinity(); }
    double lifetime() const noexcept { return death - birth; }
    friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

/// Birth-death pairs in dimensions 0 and 1, sorted by (dimension, birth,
/// death). Pairs with birth == death are never stored.
struct PersistenceDiagram {
    std::vector<PersistencePair> pairs;

    std::vector<PersistencePair> dimension(int dim) const;
};

// Distances above max_length are left out; the default keeps every edge.
RipsFiltration build_filtration(const Eigen::MatrixXd& points,
                                std::optional<double> max_length = std::nullopt);

enum class ReductionScheme {
    kCohomology,  // coboundary columns, cleared by the H0 pairing
    kBoundary,    // triangle boundary columns in filtration order
};

PersistenceDiagram persistence(const RipsFiltration& filtration,
                               ReductionScheme scheme = ReductionScheme::kCohomology);

/// Union-find with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(std::size_t n);
    std::size_t find(std::size_t x);
    // Returns false when x and y were already connected.
    bool unite(std::size_t x, std::size_t y);

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace eegtda
