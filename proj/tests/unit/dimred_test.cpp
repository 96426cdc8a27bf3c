#include <cmath>
#include <random>

#include "dimred.hpp"
#include "doctest.h"
#include "stats.hpp"
#include "synth.hpp"
#include "test_util.hpp"

using namespace eegtda;

namespace {

Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
    return m;
}

SynthOutput harmonic(int channels, std::optional<double> snr, std::uint64_t seed) {
    SynthSpec spec;
    spec.system = SynthSystem::kHarmonic;
    spec.omega = 1.0;
    spec.time_scale = 2.0 * M_PI * 8.0;
    spec.duration = 1.0;
    spec.rate = 128.0;
    spec.channels = channels;
    spec.seed = seed;
    spec.snr_db = snr;
    return generate(spec);
}

}  // namespace

TEST_CASE("derivative: central inside, one-sided at the ends") {
    Eigen::MatrixXd d(1, 4);
    d << 0, 1, 4, 9;
    const Eigen::MatrixXd out = derivative(d, 1.0);
    CHECK(out(0, 0) == 1);
    CHECK(out(0, 1) == 2);
    CHECK(out(0, 2) == 4);
    CHECK(out(0, 3) == 5);
    CHECK(derivative(Eigen::MatrixXd::Constant(1, 4, 3.0), 1.0).isZero());
    CHECK(derivative(d, 2.0)(0, 1) == 4);
    CHECK(test::error_code([] { derivative(Eigen::MatrixXd::Zero(1, 2), 1.0); }) == ErrorCode::kInsufficientData);
}

TEST_CASE("derivative of a sine stays within the Taylor remainder bound") {
    const double rate = 128.0, f = 5.0, w = 2.0 * M_PI * f;
    Eigen::MatrixXd s(1, 256);
    for (Eigen::Index t = 0; t < 256; ++t) s(0, t) = std::sin(w * t / rate);
    const Eigen::MatrixXd d = derivative(s, rate);
    const double bound = std::pow(w, 3) / (6.0 * rate * rate) * 1.01;
    double worst = 0.0;
    for (Eigen::Index t = 1; t < 255; ++t) worst = std::max(worst, std::abs(d(0, t) - w * std::cos(w * t / rate)));
    CHECK(worst < bound);
}

TEST_CASE("correlations") {
    Eigen::MatrixXd a(1, 4);
    a << 1, -1, 1, -1;
    CHECK(correlations(a, 1.0).c0(0, 0) == doctest::Approx(1.0));

    Eigen::MatrixXd dup(2, 50);
    dup.row(0) = gaussian(1, 50, 1);
    dup.row(1) = dup.row(0);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(correlations(dup, 1.0).c0);
    CHECK(lu.rank() == 1);

    const Eigen::Index w = 10000;
    const CorrelationSet c = correlations(gaussian(4, w, 2), 1.0);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i != j) CHECK(std::abs(c.c0(i, j)) < 5.0 / std::sqrt(static_cast<double>(w)));
        }
    }
    CHECK(c.c0.isApprox(c.c0.transpose()));
    CHECK(c.c2.isApprox(c.c2.transpose()));
}

TEST_CASE("PCA on rank-one data") {
    Eigen::MatrixXd d(2, 100);
    d.row(0) = gaussian(1, 100, 3);
    d.row(1) = 2.0 * d.row(0);
    const PcaResult r = pca(d, 1);
    CHECK(std::abs(r.eigenvalues(1)) < 1e-12);
    const Eigen::VectorXd centered = (d.row(0).array() - d.row(0).mean()).matrix().transpose();
    CHECK(std::abs(test::canonical_correlations(r.trajectory.points, centered)(0) - 1.0) < 1e-12);
    CHECK(r.components.col(0).cwiseAbs().maxCoeff() == r.components.col(0).maxCoeff());
}

TEST_CASE("PCA with n = M preserves total variance and decorrelates") {
    const Eigen::MatrixXd d = gaussian(5, 400, 4);
    const PcaResult r = pca(d, 5);
    const Eigen::MatrixXd centered = d.colwise() - d.rowwise().mean();
    const double total = centered.squaredNorm();
    CHECK(std::abs(r.trajectory.points.squaredNorm() - total) < 1e-9 * total);
    const Eigen::MatrixXd& p = r.trajectory.points;
    const Eigen::MatrixXd cov = p.transpose() * p;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            if (i != j) CHECK(std::abs(cov(i, j)) < 1e-9 * cov.diagonal().maxCoeff());
        }
    }
    CHECK(test::error_code([&] { pca(d, 6); }) == ErrorCode::kConfig);
    CHECK(test::error_code([&] { pca(d, 0); }) == ErrorCode::kConfig);
}

TEST_CASE("PCA recovers the spectrum of a rotated Gaussian cloud") {
    const Eigen::Index w = 100000;
    Eigen::MatrixXd src = gaussian(3, w, 5);
    src.row(0) *= 3.0;
    src.row(1) *= 2.0;
    const Eigen::MatrixXd rot = Eigen::HouseholderQR<Eigen::MatrixXd>(gaussian(3, 3, 6)).householderQ();
    const PcaResult r = pca(rot * src, 3);
    CHECK(r.eigenvalues(0) == doctest::Approx(9.0).epsilon(0.05));
    CHECK(r.eigenvalues(1) == doctest::Approx(4.0).epsilon(0.05));
    CHECK(r.eigenvalues(2) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("reductions ignore per-channel offsets") {
    const Eigen::MatrixXd d = harmonic(6, 20.0, 8).recording.samples();
    Eigen::VectorXd offset(6);
    offset << 1, -2, 30, 4, 0.5, -7;
    const Eigen::MatrixXd shifted = d.colwise() + offset;
    CHECK((pca(d, 2).trajectory.points - pca(shifted, 2).trajectory.points).cwiseAbs().maxCoeff() < 1e-9);
    DycaOptions o;
    o.n = 2;
    o.m = 2;
    CHECK((dyca(d, 128.0, o).trajectory.points - dyca(shifted, 128.0, o).trajectory.points).cwiseAbs().maxCoeff() <
          1e-9);
}

TEST_CASE("DyCA on a noiseless harmonic oscillator finds two eigenvalues near 1") {
    const SynthOutput s = harmonic(10, std::nullopt, 1);
    DycaOptions o;
    o.n = 2;
    o.m = 2;
    const DycaResult r = dyca(s.recording.samples(), 128.0, o);
    CHECK(r.eigenvalues(0) >= 0.99);
    CHECK(r.eigenvalues(1) >= 0.99);
    CHECK(r.eigenvalues(0) <= 1.0 + 1e-6);
    CHECK(r.trajectory.points.cols() == 2);
    CHECK(r.trajectory.points.rows() == 128);
}

TEST_CASE("DyCA at 20 dB separates signal from noise eigenvalues") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        CAPTURE(seed);
        const SynthOutput s = harmonic(10, 20.0, 100 + seed);
        DycaOptions o;
        o.n = 2;
        o.m = 2;
        const DycaResult r = dyca(s.recording.samples(), 128.0, o);
        CHECK(r.eigenvalues(0) >= 0.9);
        CHECK(r.eigenvalues(1) >= 0.9);
        CHECK(r.eigenvalues(2) < 0.5);
        CHECK(r.eigenvalues.minCoeff() >= -1e-6);
        CHECK(r.eigenvalues.maxCoeff() <= 1.0 + 1e-6);
    }
}

TEST_CASE("DyCA on a mixed Rossler system tracks its x and y components") {
    SynthSpec spec;
    spec.system = SynthSystem::kRossler;
    spec.time_scale = 9.0;
    spec.duration = 1.0;
    spec.channels = 27;
    spec.seed = 21;
    spec.burn_in = 50.0;
    const SynthOutput s = generate(spec);
    const DycaResult r = dyca(s.recording.samples(), 128.0, {});
    REQUIRE(r.trajectory.points.cols() == 3);
    const Eigen::VectorXd cc = test::canonical_correlations(r.trajectory.points, s.truth.leftCols(2));
    CHECK(cc(0) >= 0.95);
    CHECK(cc(1) >= 0.95);
}

TEST_CASE("DyCA output: unit variance columns, sign convention, scale invariance") {
    const Eigen::MatrixXd d = harmonic(8, 15.0, 9).recording.samples();
    DycaOptions o;
    o.n = 2;
    o.m = 2;
    const DycaResult r = dyca(d, 128.0, o);
    const Eigen::MatrixXd& p = r.trajectory.points;
    for (Eigen::Index c = 0; c < p.cols(); ++c) {
        const double var = (p.col(c).array() - p.col(c).mean()).square().mean();
        CHECK(var == doctest::Approx(1.0).epsilon(1e-9));
        Eigen::Index arg = 0;
        r.projection.col(c).cwiseAbs().maxCoeff(&arg);
        CHECK(r.projection(arg, c) > 0.0);
    }
    for (double a : {10.0, -3.0, 1e-4, 1e6}) {
        CAPTURE(a);
        const DycaResult s = dyca(a * d, 128.0, o);
        // Correlations are even in a, so the basis is unchanged and a < 0
        // only mirrors the trajectory.
        const double sign = a > 0 ? 1.0 : -1.0;
        CHECK((s.trajectory.points - sign * p).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("DyCA n, m checks and threshold mode") {
    const Eigen::MatrixXd d = harmonic(8, 20.0, 10).recording.samples();
    DycaOptions bad;
    bad.n = 3;
    bad.m = 1;
    CHECK(test::error_code([&] { dyca(d, 128.0, bad); }) == ErrorCode::kConfig);
    bad.n = 9;
    bad.m = 5;
    CHECK(test::error_code([&] { dyca(d, 128.0, bad); }) == ErrorCode::kConfig);

    // A cleaner recording so both signal eigenvalues clear the default threshold.
    const Eigen::MatrixXd clean = harmonic(8, 40.0, 10).recording.samples();
    DycaOptions thr;
    thr.n = 2;
    thr.m = 2;
    thr.eig_threshold = kDefaultEigThreshold;
    CHECK(dyca(clean, 128.0, thr).m == 2);
    thr.eig_threshold = 1e-9;  // selects every eigenvalue, more than m
    try {
        dyca(clean, 128.0, thr);
        FAIL("expected an ambiguous-model error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kAmbiguousModel);
        CHECK(std::string(e.what()).find("spectrum") != std::string::npos);
    }
}

TEST_CASE("DyCA rejects constant input") {
    CHECK(test::error_code([] { dyca(Eigen::MatrixXd::Constant(4, 64, 2.0), 128.0, {}); }) ==
          ErrorCode::kNumerical);
}
