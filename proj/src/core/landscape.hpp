#pragma once

#include <vector>

#include "homology.hpp"

namespace eegtda {

struct LandscapeVertex {
    double t = 0.0;
    double value = 0.0;
};

/// Exact persistence landscape. levels[k] holds the vertices of lambda_{k+1};
/// each level starts and ends at value 0 and identically-zero levels are not
/// stored, so levels.size() may be smaller than the requested count.
struct PersistenceLandscape {
    std::vector<std::vector<LandscapeVertex>> levels;

    /// lambda_level(t), with level counted from 1.
    double evaluate(std::size_t level, double t) const;
};

struct LandscapeNorms {
    double l1 = 0.0;
    double l2 = 0.0;
    double sup = 0.0;
    double argmax = 0.0;
};

inline constexpr int kDefaultLandscapeLevels = 2;

// Essential (infinite) pairs are ignored.
PersistenceLandscape build_landscape(const PersistenceDiagram& diagram, int dimension,
                                     int max_levels = kDefaultLandscapeLevels);

PersistenceLandscape build_landscape(const std::vector<PersistencePair>& pairs,
                                     int max_levels = kDefaultLandscapeLevels);

/// Exact integrals and extremum of one level (counted from 1). A level that is
/// absent yields all zeros.
LandscapeNorms landscape_norms(const PersistenceLandscape& landscape, int level);

}  // namespace eegtda
