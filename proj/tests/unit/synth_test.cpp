#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "pipeline.hpp"
#include "synth.hpp"
#include "test_util.hpp"

using namespace eegtda;

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double max_h1_lifetime(const PersistenceDiagram& d) {
    double best = 0.0;
    for (const auto& p : d.dimension(1)) {
        if (!p.essential()) best = std::max(best, p.death - p.birth);
    }
    return best;
}

}  // namespace

TEST_CASE("harmonic oscillator with identity mixing follows sin and cos") {
    SynthSpec spec;
    spec.system = SynthSystem::kHarmonic;
    spec.identity_mixing = true;
    spec.channels = 2;
    spec.time_scale = 2.0 * M_PI;
    spec.duration = 4.0;
    const SynthOutput s = generate(spec);
    const Eigen::MatrixXd& d = s.recording.samples();
    REQUIRE(d.cols() == 512);
    double worst = 0.0;
    for (Eigen::Index t = 0; t < d.cols(); ++t) {
        const double tau = spec.time_scale * t / spec.rate;
        worst = std::max(worst, std::abs(d(0, t) - std::sin(tau)));
        worst = std::max(worst, std::abs(d(1, t) - std::cos(tau)));
    }
    CHECK(worst < 1e-6);
    CHECK(s.recording.channels() == std::vector<std::string>{"ch1", "ch2"});
}

TEST_CASE("white noise has the requested variance") {
    SynthSpec spec;
    spec.system = SynthSystem::kNoise;
    spec.channels = 1;
    spec.duration = 10000.0 / 128.0;
    spec.noise_sigma = 2.0;
    spec.seed = 12;
    const Eigen::MatrixXd d = generate(spec).recording.samples();
    REQUIRE(d.cols() == 10000);
    const double mean = d.mean();
    const double var = (d.array() - mean).square().mean();
    CHECK(std::abs(var - 4.0) < 0.05 * 4.0);
}

TEST_CASE("filtered noise has unit stationary variance") {
    const Eigen::MatrixXd n = filtered_noise(4, 20000, 0.9, 3);
    const double var = (n.array() - n.mean()).square().mean();
    CHECK(var == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("Rossler trajectory stays bounded") {
    SynthSpec spec;
    spec.system = SynthSystem::kRossler;
    spec.identity_mixing = true;
    spec.channels = 3;
    spec.duration = 60.0;
    spec.time_scale = 9.0;
    const SynthOutput s = generate(spec);
    CHECK(s.truth.cwiseAbs().maxCoeff() < 30.0);
    CHECK(s.truth.allFinite());
}

TEST_CASE("mixing is full rank and seeded") {
    SynthSpec spec;
    spec.channels = 27;
    spec.seed = 4;
    const SynthOutput a = generate(spec);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a.mixing);
    CHECK(lu.rank() == 3);
    CHECK(a.recording.samples() == generate(spec).recording.samples());
    spec.seed = 5;
    CHECK(a.mixing != generate(spec).mixing);
}

TEST_CASE("generation errors") {
    SynthSpec spec;
    spec.channels = 2;
    CHECK(test::error_code([&] { generate(spec); }) == ErrorCode::kConfig);
    spec.channels = 3;
    spec.rate = 0.0;
    CHECK(test::error_code([&] { generate(spec); }) == ErrorCode::kConfig);
    spec.rate = 128.0;
    spec.initial_state = Eigen::Vector2d(1, 1);
    CHECK(test::error_code([&] { generate(spec); }) == ErrorCode::kConfig);
    CHECK_THROWS(parse_synth_system("lorenz"));
    CHECK(parse_synth_system("rossler") == SynthSystem::kRossler);
}

TEST_CASE("corpus: counts, layout and determinism") {
    const auto corpus = make_corpus(550, 550, 42);
    REQUIRE(corpus.size() == 1100);
    const auto pos = std::count_if(corpus.begin(), corpus.end(),
                                   [](const Segment& s) { return s.label == SegmentLabel::kIed; });
    CHECK(pos == 550);
    CHECK(corpus.front().label == SegmentLabel::kIed);
    CHECK(corpus.back().label == SegmentLabel::kBackground);
    for (std::size_t i = 0; i < corpus.size(); i += 97) {
        CHECK(corpus[i].start_sample == i * 128);
        CHECK(corpus[i].data.rows() == 27);
        CHECK(corpus[i].data.cols() == 128);
        CHECK(corpus[i].channels.size() == 27);
    }

    const auto small = make_corpus(5, 5, 7);
    const auto again = make_corpus(5, 5, 7);
    const auto other = make_corpus(5, 5, 8);
    for (std::size_t i = 0; i < small.size(); ++i) {
        CHECK(small[i].data == again[i].data);
        CHECK(small[i].data != other[i].data);
    }

    const auto [rec, labels] = concatenate(small);
    CHECK(rec.sample_count() == 10 * 128);
    REQUIRE(labels.size() == 10);
    CHECK(labels[3].start_sample == 3 * 128);
    CHECK(rec.samples().middleCols(3 * 128, 128) == small[3].data);
    CHECK(test::error_code([] { make_corpus(0, 5, 1); }) == ErrorCode::kConfig);
}

TEST_CASE("positive segments carry longer-lived loops than background") {
    const auto corpus = make_corpus(30, 30, 42);
    std::vector<double> pos, neg;
    for (const auto& seg : corpus) {
        const SegmentAnalysis a = analyze_segment(seg.data, seg.rate, {});
        (seg.label == SegmentLabel::kIed ? pos : neg).push_back(max_h1_lifetime(a.diagram));
    }
    CHECK(median(pos) > median(neg));
}

TEST_CASE("derived seeds differ by index") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(9, 3) == derive_seed(9, 3));
}
