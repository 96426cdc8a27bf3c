#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "features.hpp"
#include "landscape.hpp"

using namespace eegtda;

namespace {

constexpr std::size_t kBlock = kFeaturesPerDimension;

// Straight transcription of the feature definitions for one dimension.
std::array<double, kBlock> reference_block(const std::vector<std::pair<double, double>>& pairs) {
    std::array<double, kBlock> f{};
    if (pairs.empty()) return f;
    const double n = static_cast<double>(pairs.size());
    std::vector<double> life;
    for (const auto& [b, d] : pairs) life.push_back(d - b);
    const double sum = std::accumulate(life.begin(), life.end(), 0.0);
    const double mean = sum / n;
    double var = 0.0, entropy = 0.0, births = 0.0, deaths = 0.0, dmax = 0.0, mids = 0.0;
    for (double l : life) var += (l - mean) * (l - mean) / n;
    for (double l : life) entropy -= (l / sum) * std::log(l / sum);
    for (const auto& [b, d] : pairs) {
        births += b;
        deaths += d;
        dmax = std::max(dmax, d);
        mids += (b + d) / 2.0;
    }
    double p1 = 0, p2 = 0, p3 = 0, p4 = 0;
    for (const auto& [b, d] : pairs) {
        const double l = d - b;
        p1 += b * l;
        p2 += (dmax - d) * l;
        p3 += b * b * std::pow(l, 4);
        p4 += (dmax - d) * (dmax - d) * std::pow(l, 4);
    }
    std::vector<PersistencePair> pp;
    for (const auto& [b, d] : pairs) pp.push_back({0, b, d});
    const PersistenceLandscape ls = build_landscape(pp, 2);
    const LandscapeNorms l1 = landscape_norms(ls, 1), l2 = landscape_norms(ls, 2);
    f = {n,     mean,  std::sqrt(var), *std::max_element(life.begin(), life.end()), sum, entropy,
         births / n, deaths / n, dmax, mids / n, p1, p2, p3, p4, l1.l1, l1.l2, l1.sup, l1.argmax, l2.l1, l2.sup};
    return f;
}

PersistenceDiagram diagram(const std::vector<std::pair<double, double>>& h0,
                           const std::vector<std::pair<double, double>>& h1, bool with_essential = true) {
    PersistenceDiagram d;
    for (const auto& [b, e] : h0) d.pairs.push_back({0, b, e});
    if (with_essential) d.pairs.push_back({0, 0.0, INFINITY});
    for (const auto& [b, e] : h1) d.pairs.push_back({1, b, e});
    return d;
}

}  // namespace

TEST_CASE("feature names are locked") {
    const auto& names = feature_names();
    REQUIRE(names.size() == 40);
    const std::array<const char*, kBlock> block = {
        "count",      "lifetime_mean", "lifetime_std", "lifetime_max",  "lifetime_sum",
        "lifetime_entropy", "birth_mean", "death_mean", "death_max",    "midpoint_mean",
        "poly_b_l",   "poly_dmax_l",   "poly_b2_l4",   "poly_dmax2_l4", "pl1_l1",
        "pl1_l2",     "pl1_sup",       "pl1_argmax",   "pl2_l1",        "pl2_sup"};
    for (std::size_t i = 0; i < kBlock; ++i) {
        CHECK(names[i] == std::string("h0_") + block[i]);
        CHECK(names[kBlock + i] == std::string("h1_") + block[i]);
    }
    CHECK(kFeatureSchemaVersion == 1);
}

TEST_CASE("unit square H1 block") {
    const double r2 = std::sqrt(2.0);
    const FeatureValues f = extract_features(diagram({{0, 1}, {0, 1}, {0, 1}}, {{1, r2}}));
    const double* h1 = f.data() + kBlock;
    CHECK(h1[0] == 1);
    CHECK(h1[1] == doctest::Approx(r2 - 1));
    CHECK(h1[2] == 0);
    CHECK(h1[5] == 0);
    CHECK(h1[10] == doctest::Approx(r2 - 1));
    CHECK(h1[16] == doctest::Approx((r2 - 1) / 2));
    CHECK(h1[17] == doctest::Approx((1 + r2) / 2));
}

TEST_CASE("empty H1 gives a zero block and two equal H0 lifetimes give ln 2") {
    const FeatureValues f = extract_features(diagram({{0, 1}, {0, 1}}, {}));
    for (std::size_t i = kBlock; i < 2 * kBlock; ++i) CHECK(f[i] == 0.0);
    CHECK(f[5] == doctest::Approx(std::log(2.0)));
    const FeatureValues none = extract_features(diagram({}, {}));
    for (double v : none) CHECK(v == 0.0);
}

TEST_CASE("features match the transcribed definitions on random diagrams") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    std::uniform_int_distribution<int> count(0, 15);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<double, double>> h0, h1;
        for (int i = count(rng); i > 0; --i) h0.emplace_back(0.0, 0.01 + u(rng));
        for (int i = count(rng); i > 0; --i) {
            const double b = 0.01 + u(rng);
            h1.emplace_back(b, b + 0.01 + u(rng));
        }
        const FeatureValues f = extract_features(diagram(h0, h1));
        const auto r0 = reference_block(h0), r1 = reference_block(h1);
        for (std::size_t i = 0; i < kBlock; ++i) {
            CAPTURE(i);
            CHECK(f[i] == doctest::Approx(r0[i]).epsilon(1e-12));
            CHECK(f[kBlock + i] == doctest::Approx(r1[i]).epsilon(1e-12));
        }
        for (double v : f) CHECK(std::isfinite(v));
    }
}

TEST_CASE("features are a function of the multiset of pairs") {
    PersistenceDiagram d = diagram({{0, 0.3}, {0, 0.7}, {0, 1.1}}, {{0.5, 0.9}, {0.6, 1.4}, {1.0, 1.2}});
    const FeatureValues a = extract_features(d);
    std::mt19937_64 rng(4);
    for (int k = 0; k < 5; ++k) {
        std::shuffle(d.pairs.begin(), d.pairs.end(), rng);
        CHECK(extract_features(d) == a);
    }
}

TEST_CASE("duplicating every pair") {
    const FeatureValues one = extract_features(diagram({}, {{0, 2}}));
    const FeatureValues two = extract_features(diagram({}, {{0, 2}, {0, 2}}));
    const double* a = one.data() + kBlock;
    const double* b = two.data() + kBlock;
    CHECK(b[0] == 2 * a[0]);
    CHECK(b[4] == doctest::Approx(2 * a[4]));
    CHECK(b[1] == doctest::Approx(a[1]));
    CHECK(b[5] == doctest::Approx(std::log(2.0)));  // two equal masses
    CHECK(b[16] == doctest::Approx(a[16]));         // lambda_1 sup unchanged
    CHECK(b[14] == doctest::Approx(a[14]));         // lambda_1 is the same tent
    CHECK(b[18] == doctest::Approx(a[14]));         // lambda_2 became lambda_1's copy
    CHECK(b[19] == doctest::Approx(a[16]));
    CHECK(a[18] == 0);
}

TEST_CASE("golden vector") {
    const FeatureValues f = extract_features(diagram({{0, 1}, {0, 2}}, {{1, 3}, {2, 2.5}}));
    const std::array<double, 40> want = {
        // H0: lifetimes 1, 2
        2, 1.5, 0.5, 2, 3, -(1.0 / 3) * std::log(1.0 / 3) - (2.0 / 3) * std::log(2.0 / 3), 0, 1.5, 2, 0.75,
        0, 1, 0, 1, 1, std::sqrt(2.0 / 3), 1, 1, 0.25, 0.5,
        // H1: (1,3) lifetime 2, (2,2.5) lifetime 0.5
        2, 1.25, 0.75, 2, 2.5, -(0.8) * std::log(0.8) - 0.2 * std::log(0.2), 1.5, 2.75, 3, 2.125,
        1 * 2 + 2 * 0.5, 0 * 2 + 0.5 * 0.5, 1 * 16 + 4 * 0.0625, 0 + 0.25 * 0.0625, 1.0, std::sqrt(2.0 / 3), 1, 2,
        0.0625, 0.25};
    for (std::size_t i = 0; i < 40; ++i) {
        CAPTURE(i);
        CHECK(f[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }
    CHECK(extract_features(diagram({{0, 1}, {0, 2}}, {{1, 3}, {2, 2.5}})) == f);
}
