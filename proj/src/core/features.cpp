#include "features.hpp"

#include <algorithm>
#include <cmath>

namespace eegtda {

namespace {

constexpr const char* kBlockNames[kFeaturesPerDimension] = {
    "count",        "lifetime_mean", "lifetime_std", "lifetime_max",  "lifetime_sum",
    "lifetime_entropy", "birth_mean", "death_mean",  "death_max",     "midpoint_mean",
    "poly_b_l",     "poly_dmax_l",   "poly_b2_l4",   "poly_dmax2_l4", "pl1_l1",
    "pl1_l2",       "pl1_sup",       "pl1_argmax",   "pl2_l1",        "pl2_sup"};

void fill_block(const std::vector<PersistencePair>& all, const PersistenceLandscape& landscape,
                double* out) {
    std::vector<PersistencePair> pairs;
    for (const auto& p : all) {
        if (!p.essential() && p.death > p.birth) pairs.push_back(p);
    }
    std::fill(out, out + kFeaturesPerDimension, 0.0);
    if (pairs.empty()) return;

    // Summation in a canonical order keeps the block independent of the
    // order the pairs arrive in, down to the last bit.
    std::sort(pairs.begin(), pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
        return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
    });

    const auto count = static_cast<double>(pairs.size());
    double sum_life = 0.0, max_life = 0.0, sum_birth = 0.0, sum_death = 0.0, max_death = 0.0;
    for (const auto& p : pairs) {
        sum_life += p.lifetime();
        max_life = std::max(max_life, p.lifetime());
        sum_birth += p.birth;
        sum_death += p.death;
        max_death = std::max(max_death, p.death);
    }
    const double mean_life = sum_life / count;
    double var = 0.0, entropy = 0.0;
    double poly_b = 0.0, poly_dmax = 0.0, poly_b2 = 0.0, poly_dmax2 = 0.0;
    for (const auto& p : pairs) {
        const double life = p.lifetime();
        var += (life - mean_life) * (life - mean_life);
        const double share = life / sum_life;
        entropy -= share * std::log(share);
        const double life4 = life * life * life * life;
        const double gap = max_death - p.death;
        poly_b += p.birth * life;
        poly_dmax += gap * life;
        poly_b2 += p.birth * p.birth * life4;
        poly_dmax2 += gap * gap * life4;
    }
    out[0] = count;
    out[1] = mean_life;
    out[2] = std::sqrt(var / count);
    out[3] = max_life;
    out[4] = sum_life;
    out[5] = pairs.size() == 1 ? 0.0 : entropy;
    out[6] = sum_birth / count;
    out[7] = sum_death / count;
    out[8] = max_death;
    out[9] = 0.5 * (sum_birth + sum_death) / count;
    out[10] = poly_b;
    out[11] = poly_dmax;
    out[12] = poly_b2;
    out[13] = poly_dmax2;
    const LandscapeNorms first = landscape_norms(landscape, 1);
    const LandscapeNorms second = landscape_norms(landscape, 2);
    out[14] = first.l1;
    out[15] = first.l2;
    out[16] = first.sup;
    out[17] = first.argmax;
    out[18] = second.l1;
    out[19] = second.sup;
}

}  // namespace

const std::array<std::string, kFeatureCount>& feature_names() {
    static const std::array<std::string, kFeatureCount> names = [] {
        std::array<std::string, kFeatureCount> n;
        for (std::size_t d = 0; d < 2; ++d) {
            for (std::size_t i = 0; i < kFeaturesPerDimension; ++i) {
                n[d * kFeaturesPerDimension + i] = "h" + std::to_string(d) + "_" + kBlockNames[i];
            }
        }
        return n;
    }();
    return names;
}

FeatureValues extract_features(const PersistenceDiagram& diagram,
                               const std::array<PersistenceLandscape, 2>& landscapes) {
    FeatureValues values{};
    for (int d = 0; d < 2; ++d) {
        fill_block(diagram.dimension(d), landscapes[static_cast<std::size_t>(d)],
                   values.data() + static_cast<std::size_t>(d) * kFeaturesPerDimension);
    }
    return values;
}

FeatureValues extract_features(const PersistenceDiagram& diagram) {
    return extract_features(diagram, {build_landscape(diagram, 0, 2), build_landscape(diagram, 1, 2)});
}

}  // namespace eegtda
