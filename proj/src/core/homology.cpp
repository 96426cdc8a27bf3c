#include "homology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "error.hpp"

namespace eegtda {

std::vector<PersistencePair> PersistenceDiagram::dimension(int dim) const {
    std::vector<PersistencePair> out;
    for (const auto& p : pairs) {
        if (p.dimension == dim) out.push_back(p);
    }
    return out;
}

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool UnionFind::unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (size_[x] < size_[y]) std::swap(x, y);
    parent_[y] = x;
    size_[x] += size_[y];
    return true;
}

RipsFiltration build_filtration(const Eigen::MatrixXd& points, std::optional<double> max_length) {
    if (points.rows() < 1 || points.cols() < 1) {
        fail(ErrorCode::kInsufficientData, "point cloud must have at least one point and one coordinate");
    }
    if (!points.allFinite()) fail(ErrorCode::kData, "point cloud has non-finite coordinates");
    if (max_length && (std::isnan(*max_length) || *max_length < 0.0)) {
        fail(ErrorCode::kConfig, "maximum filtration length must be nonnegative");
    }
    const auto n = static_cast<std::size_t>(points.rows());
    RipsFiltration filt;
    filt.point_count = n;
    filt.distances.resize(points.rows(), points.rows());
    double diameter = 0.0;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        filt.distances(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < points.rows(); ++j) {
            const double d = (points.row(i) - points.row(j)).norm();
            filt.distances(i, j) = d;
            filt.distances(j, i) = d;
            diameter = std::max(diameter, d);
        }
    }
    filt.max_length = max_length ? *max_length : diameter;
    filt.edges.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = filt.distances(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (d <= filt.max_length) {
                filt.edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), d});
            }
        }
    }
    std::sort(filt.edges.begin(), filt.edges.end(), [](const RipsEdge& a, const RipsEdge& b) {
        if (a.length != b.length) return a.length < b.length;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    return filt;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A triangle ordered by (diameter, vertices lexicographically). The code
// i*n*n + j*n + k with i < j < k preserves the lexicographic order.
struct Triangle {
    double diameter;
    std::uint64_t code;

    bool operator<(const Triangle& o) const noexcept {
        return diameter != o.diameter ? diameter < o.diameter : code < o.code;
    }
    bool operator==(const Triangle& o) const noexcept { return code == o.code; }
};

using Column = std::vector<Triangle>;

// Working column as a min-heap with lazy Z/2 cancellation: equal entries
// cancel in pairs when they reach the top.
class HeapColumn {
public:
    void clear() { heap_.clear(); }

    void add(const Column& entries) {
        for (const auto& t : entries) {
            heap_.push_back(t);
            std::push_heap(heap_.begin(), heap_.end(), later);
        }
    }

    std::optional<Triangle> pivot() {
        while (!heap_.empty()) {
            const Triangle top = pop();
            if (heap_.empty() || !(heap_.front() == top)) {
                heap_.push_back(top);
                std::push_heap(heap_.begin(), heap_.end(), later);
                return top;
            }
            pop();
        }
        return std::nullopt;
    }

private:
    static bool later(const Triangle& a, const Triangle& b) { return b < a; }

    Triangle pop() {
        std::pop_heap(heap_.begin(), heap_.end(), later);
        const Triangle t = heap_.back();
        heap_.pop_back();
        return t;
    }

    std::vector<Triangle> heap_;
};

struct ZeroDim {
    std::vector<PersistencePair> pairs;
    std::vector<bool> merges;  // per edge: did it join two components
};

ZeroDim zero_dimensional(const RipsFiltration& filt) {
    ZeroDim out;
    out.merges.assign(filt.edges.size(), false);
    UnionFind uf(filt.point_count);
    std::size_t components = filt.point_count;
    for (std::size_t e = 0; e < filt.edges.size(); ++e) {
        const auto& edge = filt.edges[e];
        if (!uf.unite(edge.i, edge.j)) continue;
        out.merges[e] = true;
        --components;
        if (edge.length > 0.0) out.pairs.push_back({0, 0.0, edge.length});
    }
    for (std::size_t c = 0; c < components; ++c) out.pairs.push_back({0, 0.0, kInf});
    return out;
}

class EdgeIndex {
public:
    explicit EdgeIndex(const RipsFiltration& filt)
        : n_(filt.point_count), rank_(n_ * n_, kAbsent) {
        for (std::size_t e = 0; e < filt.edges.size(); ++e) {
            rank_[filt.edges[e].i * n_ + filt.edges[e].j] = static_cast<std::uint32_t>(e);
            rank_[filt.edges[e].j * n_ + filt.edges[e].i] = static_cast<std::uint32_t>(e);
        }
    }

    bool present(std::size_t a, std::size_t b) const { return rank_[a * n_ + b] != kAbsent; }
    std::uint32_t rank(std::size_t a, std::size_t b) const { return rank_[a * n_ + b]; }

    static constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

private:
    std::size_t n_;
    std::vector<std::uint32_t> rank_;
};

std::uint64_t triangle_code(std::uint64_t n, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return (a * n + b) * n + c;
}

// Coboundary of an edge in the full complex, sorted by filtration order. A
// triangle exists when both of its other edges are within max_length.
class Coboundary {
public:
    explicit Coboundary(const RipsFiltration& filt) : filt_(filt) {}

    void column(std::size_t e, Column& out) const {
        const auto& edge = filt_.edges[e];
        const double* di = row(edge.i);
        const double* dj = row(edge.j);
        out.clear();
        for (std::uint32_t c = 0; c < filt_.point_count; ++c) {
            if (c == edge.i || c == edge.j || di[c] > filt_.max_length || dj[c] > filt_.max_length) continue;
            out.push_back({std::max({edge.length, di[c], dj[c]}), triangle_code(filt_.point_count, edge.i, edge.j, c)});
        }
        std::sort(out.begin(), out.end());
    }

    std::optional<Triangle> first(std::size_t e) const {
        const auto& edge = filt_.edges[e];
        const double* di = row(edge.i);
        const double* dj = row(edge.j);
        double best_diam = kInf;
        std::uint64_t best_code = std::numeric_limits<std::uint64_t>::max();
        for (std::uint32_t c = 0; c < filt_.point_count; ++c) {
            if (c == edge.i || c == edge.j || di[c] > filt_.max_length || dj[c] > filt_.max_length) continue;
            const double diam = std::max({edge.length, di[c], dj[c]});
            if (diam > best_diam) continue;
            const std::uint64_t code = triangle_code(filt_.point_count, edge.i, edge.j, c);
            if (diam < best_diam || code < best_code) {
                best_diam = diam;
                best_code = code;
            }
        }
        if (best_diam == kInf) return std::nullopt;
        return Triangle{best_diam, best_code};
    }

private:
    // The distance matrix is symmetric, so column p holds the distances from p.
    const double* row(std::size_t p) const {
        return filt_.distances.data() + p * filt_.point_count;
    }

    const RipsFiltration& filt_;
};

// Columns are kept implicitly as sets of edges whose coboundaries sum to the
// reduced column; most edges pair with their first cofacet and never need
// the full column.
std::vector<PersistencePair> one_dimensional_cohomology(const RipsFiltration& filt,
                                                        const ZeroDim& zero) {
    const Coboundary cob(filt);
    std::vector<PersistencePair> pairs;
    std::unordered_map<std::uint64_t, std::size_t> pivot_owner;
    pivot_owner.reserve(filt.edges.size());
    std::vector<std::vector<std::uint32_t>> combos;
    Column entries;
    HeapColumn column;
    std::vector<std::uint32_t> combo, combo_scratch;

    for (std::size_t e = filt.edges.size(); e-- > 0;) {
        if (zero.merges[e]) continue;  // cleared: already a death in H0
        const double birth = filt.edges[e].length;
        const auto head = cob.first(e);
        if (!head) {
            pairs.push_back({1, birth, kInf});
            continue;
        }
        if (!pivot_owner.contains(head->code)) {
            pivot_owner.emplace(head->code, combos.size());
            combos.push_back({static_cast<std::uint32_t>(e)});
            if (head->diameter > birth) pairs.push_back({1, birth, head->diameter});
            continue;
        }

        column.clear();
        cob.column(e, entries);
        column.add(entries);
        combo.assign(1, static_cast<std::uint32_t>(e));
        std::optional<Triangle> pivot;
        while ((pivot = column.pivot())) {
            auto it = pivot_owner.find(pivot->code);
            if (it == pivot_owner.end()) break;
            const auto& source = combos[it->second];
            for (std::uint32_t f : source) {
                cob.column(f, entries);
                column.add(entries);
            }
            combo_scratch.clear();
            std::set_symmetric_difference(combo.begin(), combo.end(), source.begin(), source.end(),
                                          std::back_inserter(combo_scratch), std::greater<>());
            combo.swap(combo_scratch);
        }
        if (!pivot) {
            pairs.push_back({1, birth, kInf});
            continue;
        }
        pivot_owner.emplace(pivot->code, combos.size());
        combos.push_back(combo);
        if (pivot->diameter > birth) pairs.push_back({1, birth, pivot->diameter});
    }
    return pairs;
}

std::vector<PersistencePair> one_dimensional_boundary(const RipsFiltration& filt, const ZeroDim& zero) {
    const std::size_t n = filt.point_count;
    const EdgeIndex index(filt);
    struct Face {
        double diameter;
        std::uint32_t a, b, c;
    };
    std::vector<Face> triangles;
    for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = a + 1; b < n; ++b) {
            if (!index.present(a, b)) continue;
            for (std::uint32_t c = b + 1; c < n; ++c) {
                if (!index.present(a, c) || !index.present(b, c)) continue;
                const double diam = std::max({filt.distances(a, b), filt.distances(a, c), filt.distances(b, c)});
                triangles.push_back({diam, a, b, c});
            }
        }
    }
    std::sort(triangles.begin(), triangles.end(), [](const Face& x, const Face& y) {
        if (x.diameter != y.diameter) return x.diameter < y.diameter;
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.c < y.c;
    });

    std::size_t positive_edges = 0;
    for (bool merge : zero.merges) positive_edges += merge ? 0 : 1;

    // Columns hold edge ranks sorted descending so the pivot is front().
    std::vector<std::vector<std::uint32_t>> reduced;
    std::vector<std::size_t> owner(filt.edges.size(), std::numeric_limits<std::size_t>::max());
    std::vector<bool> paired(filt.edges.size(), false);
    std::vector<PersistencePair> pairs;
    std::vector<std::uint32_t> column, scratch;
    std::size_t paired_count = 0;
    for (const auto& t : triangles) {
        if (paired_count == positive_edges) break;
        column = {index.rank(t.a, t.b), index.rank(t.a, t.c), index.rank(t.b, t.c)};
        std::sort(column.begin(), column.end(), std::greater<>());
        while (!column.empty() && owner[column.front()] != std::numeric_limits<std::size_t>::max()) {
            const auto& src = reduced[owner[column.front()]];
            scratch.clear();
            std::set_symmetric_difference(column.begin(), column.end(), src.begin(), src.end(),
                                          std::back_inserter(scratch), std::greater<>());
            column.swap(scratch);
        }
        if (column.empty()) continue;
        const std::uint32_t pivot = column.front();
        owner[pivot] = reduced.size();
        reduced.push_back(column);
        paired[pivot] = true;
        ++paired_count;
        const double birth = filt.edges[pivot].length;
        if (t.diameter > birth) pairs.push_back({1, birth, t.diameter});
    }
    for (std::size_t e = 0; e < filt.edges.size(); ++e) {
        if (!zero.merges[e] && !paired[e]) pairs.push_back({1, filt.edges[e].length, kInf});
    }
    return pairs;
}

}  // namespace

PersistenceDiagram persistence(const RipsFiltration& filt, ReductionScheme scheme) {
    PersistenceDiagram diagram;
    if (filt.point_count == 0) return diagram;
    ZeroDim zero = zero_dimensional(filt);
    diagram.pairs = std::move(zero.pairs);
    auto ones = scheme == ReductionScheme::kCohomology ? one_dimensional_cohomology(filt, zero)
                                                       : one_dimensional_boundary(filt, zero);
    diagram.pairs.insert(diagram.pairs.end(), ones.begin(), ones.end());
    std::sort(diagram.pairs.begin(), diagram.pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
        if (a.dimension != b.dimension) return a.dimension < b.dimension;
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
    return diagram;
}

}  // namespace eegtda
