#include "landscape.hpp"

#include <algorithm>
#include <cmath>

namespace eegtda {

namespace {

struct Tent {
    double birth;
    double death;
};

struct LevelSample {
    double value;
    int slope;  // -1, 0, +1
};

// The `levels` largest tent values at t, each with the slope of the tent
// that realizes it, written in descending order into `out`.
void top_values(const std::vector<Tent>& tents, double t, std::size_t levels,
                std::vector<LevelSample>& out) {
    out.assign(levels, {0.0, 0});
    for (const auto& tent : tents) {
        const double rise = t - tent.birth;
        const double fall = tent.death - t;
        const double value = std::min(rise, fall);
        if (!(value > 0.0)) continue;
        if (value <= out.back().value) continue;
        const LevelSample sample{value, rise < fall ? 1 : (rise > fall ? -1 : 0)};
        auto pos = std::upper_bound(out.begin(), out.end(), value,
                                    [](double v, const LevelSample& s) { return v > s.value; });
        out.insert(pos, sample);
        out.pop_back();
    }
}

}  // namespace

double PersistenceLandscape::evaluate(std::size_t level, double t) const {
    if (level == 0 || level > levels.size()) return 0.0;
    const auto& v = levels[level - 1];
    if (t <= v.front().t || t >= v.back().t) return 0.0;
    auto hi = std::upper_bound(v.begin(), v.end(), t,
                               [](double x, const LandscapeVertex& p) { return x < p.t; });
    auto lo = hi - 1;
    const double span = hi->t - lo->t;
    if (span <= 0.0) return std::max(lo->value, hi->value);
    const double w = (t - lo->t) / span;
    return lo->value + w * (hi->value - lo->value);
}

PersistenceLandscape build_landscape(const std::vector<PersistencePair>& pairs, int max_levels) {
    PersistenceLandscape landscape;
    std::vector<Tent> tents;
    for (const auto& p : pairs) {
        if (p.essential() || !(p.death > p.birth)) continue;
        tents.push_back({p.birth, p.death});
    }
    if (tents.empty() || max_levels <= 0) return landscape;

    // Every breakpoint of every level is an endpoint, or the crossing of a
    // rising edge with a falling edge at (birth_j + death_i) / 2.
    std::vector<double> knots;
    knots.reserve(tents.size() * (tents.size() + 2));
    for (const auto& a : tents) {
        knots.push_back(a.birth);
        knots.push_back(a.death);
        for (const auto& b : tents) {
            if (b.birth < a.death) knots.push_back(0.5 * (b.birth + a.death));
        }
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    const auto levels = static_cast<std::size_t>(max_levels);
    const std::size_t k = knots.size();
    std::vector<std::vector<double>> values(levels, std::vector<double>(k));
    std::vector<std::vector<int>> slopes(levels, std::vector<int>(k > 0 ? k - 1 : 0));
    std::vector<LevelSample> top;
    for (std::size_t r = 0; r < k; ++r) {
        top_values(tents, knots[r], levels, top);
        for (std::size_t l = 0; l < levels; ++l) values[l][r] = top[l].value;
        if (r + 1 < k) {
            top_values(tents, 0.5 * (knots[r] + knots[r + 1]), levels, top);
            for (std::size_t l = 0; l < levels; ++l) slopes[l][r] = top[l].slope;
        }
    }

    for (std::size_t l = 0; l < levels; ++l) {
        const auto& s = slopes[l];
        auto first = std::find_if(s.begin(), s.end(), [](int x) { return x != 0; });
        if (first == s.end()) break;  // this level and all deeper ones vanish
        auto last = std::find_if(s.rbegin(), s.rend(), [](int x) { return x != 0; });
        const auto begin = static_cast<std::size_t>(first - s.begin());
        const auto end = s.size() - static_cast<std::size_t>(last - s.rbegin());  // one past last interval
        std::vector<LandscapeVertex> vertices;
        vertices.push_back({knots[begin], 0.0});
        for (std::size_t r = begin + 1; r < end; ++r) {
            if (s[r - 1] != s[r]) vertices.push_back({knots[r], values[l][r]});
        }
        vertices.push_back({knots[end], 0.0});
        landscape.levels.push_back(std::move(vertices));
    }
    return landscape;
}

PersistenceLandscape build_landscape(const PersistenceDiagram& diagram, int dimension, int max_levels) {
    return build_landscape(diagram.dimension(dimension), max_levels);
}

LandscapeNorms landscape_norms(const PersistenceLandscape& landscape, int level) {
    LandscapeNorms norms;
    if (level < 1 || static_cast<std::size_t>(level) > landscape.levels.size()) return norms;
    const auto& v = landscape.levels[static_cast<std::size_t>(level) - 1];
    double squares = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double dt = v[i + 1].t - v[i].t;
        const double a = v[i].value;
        const double b = v[i + 1].value;
        norms.l1 += 0.5 * (a + b) * dt;
        squares += dt * (a * a + a * b + b * b) / 3.0;
    }
    norms.l2 = std::sqrt(squares);
    for (const auto& p : v) {
        if (p.value > norms.sup) {
            norms.sup = p.value;
            norms.argmax = p.t;
        }
    }
    return norms;
}

}  // namespace eegtda
