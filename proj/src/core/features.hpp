#pragma once

#include <array>
#include <optional>
#include <string>

#include "homology.hpp"
#include "landscape.hpp"
#include "recording.hpp"

namespace eegtda {

inline constexpr std::size_t kFeaturesPerDimension = 20;
inline constexpr std::size_t kFeatureCount = 2 * kFeaturesPerDimension;
inline constexpr int kFeatureSchemaVersion = 1;

/// Per homology dimension k (H0 block first, then H1), in this order:
///
///   count, lifetime_mean, lifetime_std, lifetime_max, lifetime_sum,
///   lifetime_entropy, birth_mean, death_mean, death_max, midpoint_mean,
///   poly_b_l       = sum b (d - b)
///   poly_dmax_l    = sum (dmax - d)(d - b)
///   poly_b2_l4     = sum b^2 (d - b)^4
///   poly_dmax2_l4  = sum (dmax - d)^2 (d - b)^4
///   pl1_l1, pl1_l2, pl1_sup, pl1_argmax, pl2_l1, pl2_sup
///
/// Only finite pairs contribute; a dimension without finite pairs yields
/// twenty zeros. The std is the population std and dmax is the largest
/// finite death in that dimension.
using FeatureValues = std::array<double, kFeatureCount>;

struct FeatureVector {
    FeatureValues values{};
    std::string source_id;
    std::size_t start_sample = 0;
    std::optional<SegmentLabel> label;
};

const std::array<std::string, kFeatureCount>& feature_names();

/// `landscapes[k]` must be the landscape of dimension k built from the same
/// diagram (with at least two levels requested).
FeatureValues extract_features(const PersistenceDiagram& diagram,
                               const std::array<PersistenceLandscape, 2>& landscapes);

/// Builds the two-level landscapes itself.
FeatureValues extract_features(const PersistenceDiagram& diagram);

}  // namespace eegtda
