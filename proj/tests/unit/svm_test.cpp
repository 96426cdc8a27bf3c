#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "protocol.hpp"
#include "svm.hpp"
#include "test_util.hpp"

using namespace eegtda;

namespace {

struct Fixture {
    Eigen::MatrixXd x;
    Labels y;
};

// Two Gaussian blobs in d dimensions whose centers sit `gap` apart along the
// first axis, spread small enough that they never overlap.
Fixture blobs(int per_class, int d, double gap, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    Fixture f;
    f.x.resize(2 * per_class, d);
    for (int i = 0; i < 2 * per_class; ++i) {
        const int label = i % 2 == 0 ? 1 : -1;
        for (int k = 0; k < d; ++k) f.x(i, k) = u(rng);
        f.x(i, 0) += label * gap / 2.0;
        f.y.push_back(label);
    }
    return f;
}

Fixture xor_points() {
    Fixture f;
    f.x.resize(4, 2);
    f.x << 1, 1, -1, -1, 1, -1, -1, 1;
    f.y = {1, 1, -1, -1};
    return f;
}

Fixture noisy(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Fixture f;
    f.x.resize(n, 4);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < 4; ++k) f.x(i, k) = g(rng);
        f.y.push_back(f.x(i, 0) + 0.5 * f.x(i, 1) + 0.8 * g(rng) > 0 ? 1 : -1);
    }
    return f;
}

std::vector<double> dual_alphas(const SvmModel& model, const Labels& y) {
    std::vector<double> a(y.size(), 0.0);
    for (std::size_t s = 0; s < model.support_indices.size(); ++s) {
        const std::size_t i = model.support_indices[s];
        a[i] = model.coefficients(static_cast<Eigen::Index>(s)) * y[i];
    }
    return a;
}

}  // namespace

TEST_CASE("scaler") {
    Eigen::MatrixXd a(2, 1);
    a << 1, 3;
    const Scaler s = fit_scaler(a);
    CHECK(s.means(0) == 2);
    CHECK(s.stds(0) == 1);
    const Eigen::MatrixXd z = apply_scaler(s, a);
    CHECK(z(0, 0) == -1);
    CHECK(z(1, 0) == 1);

    const Eigen::MatrixXd constant = Eigen::MatrixXd::Constant(3, 1, 5.0);
    CHECK(apply_scaler(fit_scaler(constant), constant).isZero());
    CHECK(test::error_code([] { fit_scaler(Eigen::MatrixXd::Ones(1, 3)); }) == ErrorCode::kInsufficientData);

    const Fixture f = noisy(50, 1);
    const Eigen::MatrixXd sz = apply_scaler(fit_scaler(f.x), f.x);
    for (Eigen::Index c = 0; c < sz.cols(); ++c) {
        CHECK(std::abs(sz.col(c).mean()) < 1e-12);
        CHECK(std::abs(std::sqrt(sz.col(c).squaredNorm() / 50.0) - 1.0) < 1e-12);
    }
}

TEST_CASE("separable blobs, linear kernel") {
    const Fixture f = blobs(10, 2, 2.0, 3);
    const SvmModel m = train_svc(f.x, f.y, {KernelType::kLinear, 0.0}, 1.0);
    CHECK(m.converged);
    CHECK(evaluate(m, f.x, f.y).accuracy == 1.0);
}

TEST_CASE("XOR with an RBF kernel satisfies the KKT conditions of the 4-point dual") {
    const Fixture f = xor_points();
    const Kernel kernel{KernelType::kRbf, 1.0};
    const TrainOptions options{1e-3, 200};
    const SvmModel m = train_svc(f.x, f.y, kernel, 10.0, options);
    CHECK(evaluate(m, f.x, f.y).accuracy == 1.0);

    // The points are already standardized, so the kernel is taken on them as is.
    std::vector<std::vector<double>> k(4, std::vector<double>(4));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) k[i][j] = std::exp(-1.0 * (f.x.row(i) - f.x.row(j)).squaredNorm());
    }
    const std::vector<double> a = dual_alphas(m, f.y);
    CHECK(oracle::kkt_violation(k, f.y, a, m.bias, 10.0) < options.tol);

    const auto [best, b] = oracle::solve_small_dual(k, f.y, 10.0);
    REQUIRE(best.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(a[i] == doctest::Approx(best[i]).epsilon(1e-2));
    CHECK(m.bias == doctest::Approx(b).epsilon(1e-2));
}

TEST_CASE("dual feasibility at convergence") {
    const Fixture f = noisy(120, 2);
    for (double c : {0.1, 1.0, 10.0}) {
        for (const Kernel& kernel : {Kernel{KernelType::kLinear, 0.0}, Kernel{KernelType::kRbf, 0.25}}) {
            const SvmModel m = train_svc(f.x, f.y, kernel, c);
            REQUIRE(m.converged);
            const auto a = dual_alphas(m, f.y);
            double balance = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(a[i] >= 0.0);
                CHECK(a[i] <= c * (1 + 1e-12));
                balance += a[i] * f.y[i];
            }
            CHECK(std::abs(balance) < 1e-3);
        }
    }
}

TEST_CASE("flipping the labels complements every prediction") {
    const Fixture f = noisy(80, 3);
    Labels flipped = f.y;
    for (int& v : flipped) v = -v;
    for (const Kernel& kernel : {Kernel{KernelType::kLinear, 0.0}, Kernel{KernelType::kRbf, 0.5}}) {
        const SvmModel a = train_svc(f.x, f.y, kernel, 1.0);
        const SvmModel b = train_svc(f.x, flipped, kernel, 1.0);
        for (Eigen::Index i = 0; i < f.x.rows(); ++i) {
            CHECK(a.decision(f.x.row(i).transpose()) == -b.decision(f.x.row(i).transpose()));
            CHECK(a.predict(f.x.row(i).transpose()) == -b.predict(f.x.row(i).transpose()));
        }
    }
}

TEST_CASE("positive column rescaling does not change predictions") {
    const Fixture f = noisy(80, 4);
    Eigen::MatrixXd scaled = f.x;
    scaled.col(0) *= 1000.0;
    scaled.col(2) *= 0.001;
    const SvmModel a = train_svc(f.x, f.y, {KernelType::kRbf, 0.3}, 1.0);
    const SvmModel b = train_svc(scaled, f.y, {KernelType::kRbf, 0.3}, 1.0);
    CHECK(a.predict_all(f.x) == b.predict_all(scaled));
}

TEST_CASE("training errors and the non-convergence flag") {
    const Fixture f = noisy(40, 5);
    CHECK(test::error_code([&] { train_svc(f.x, Labels(40, 1), {}, 1.0); }) == ErrorCode::kConfig);
    CHECK(test::error_code([&] { train_svc(f.x, f.y, {}, 0.0); }) == ErrorCode::kConfig);
    const SvmModel m = train_svc(f.x, f.y, {KernelType::kRbf, 5.0}, 100.0, {1e-9, 1});
    CHECK_FALSE(m.converged);
    CHECK(m.support_vectors.rows() > 0);
}

TEST_CASE("evaluate: report and degenerate input") {
    const Fixture f = blobs(10, 2, 2.0, 6);
    const SvmModel m = train_svc(f.x, f.y, {}, 1.0);
    const EvalReport r = evaluate(m, f.x, f.y);
    CHECK(r.total() == 20);
    CHECK(r.confusion[0][0] == 10);
    CHECK(r.confusion[1][1] == 10);
    CHECK(test::error_code([&] { evaluate(m, Eigen::MatrixXd(0, 2), {}); }) == ErrorCode::kInsufficientData);
}

TEST_CASE("stratified folds partition and keep proportions") {
    Labels y;
    for (int i = 0; i < 103; ++i) y.push_back(i % 3 == 0 ? 1 : -1);
    const auto folds = stratified_folds(y, 5, 42);
    REQUIRE(folds.size() == 5);
    std::set<std::size_t> seen;
    std::size_t total = 0;
    const double pos_rate = std::count(y.begin(), y.end(), 1) / 103.0;
    for (const auto& fold : folds) {
        total += fold.size();
        seen.insert(fold.begin(), fold.end());
        const auto pos = std::count_if(fold.begin(), fold.end(), [&](std::size_t i) { return y[i] == 1; });
        CHECK(std::abs(static_cast<double>(pos) - pos_rate * fold.size()) <= 1.0 + 1e-9);
    }
    CHECK(total == 103);
    CHECK(seen.size() == 103);
    CHECK(stratified_folds(y, 5, 42) == folds);
    CHECK(test::error_code([&] { stratified_folds(Labels{1, 1, -1, -1, -1}, 3, 1); }) == ErrorCode::kConfig);
    CHECK(test::error_code([&] { stratified_folds(y, 1, 1); }) == ErrorCode::kConfig);
}

TEST_CASE("stratified split") {
    Labels y;
    for (int i = 0; i < 200; ++i) y.push_back(i < 100 ? 1 : -1);
    const Split s = stratified_split(y, 0.15, 7);
    CHECK(s.test.size() == 30);
    CHECK(s.train.size() == 170);
    const auto pos = std::count_if(s.test.begin(), s.test.end(), [&](std::size_t i) { return y[i] == 1; });
    CHECK(pos == 15);
    CHECK(std::is_sorted(s.train.begin(), s.train.end()));
}

TEST_CASE("cross-validation: singleton grid, tie rule, separable grid") {
    const Fixture sep = blobs(25, 3, 3.0, 8);
    const auto one = cross_validate(sep.x, sep.y, {GridCell{{KernelType::kLinear, 0.0}, 1.0}}, 5, 1);
    REQUIRE(one.cells.size() == 1);
    REQUIRE(one.cells[0].fold_accuracies.size() == 5);
    double mean = 0.0;
    for (double a : one.cells[0].fold_accuracies) mean += a / 5.0;
    CHECK(one.cells[0].mean_accuracy == doctest::Approx(mean));

    const auto tie = cross_validate(sep.x, sep.y,
                                    {GridCell{{KernelType::kLinear, 0.0}, 10.0}, GridCell{{KernelType::kLinear, 0.0}, 1.0}},
                                    5, 1);
    REQUIRE(tie.cells[0].mean_accuracy == tie.cells[1].mean_accuracy);
    CHECK(tie.best.c == 1.0);

    std::vector<GridCell> grid;
    // C = 0.1 with RBF underfits 50 points, so the grid starts at 1.
    for (double c : {1.0, 10.0, 100.0}) {
        grid.push_back({{KernelType::kLinear, 0.0}, c});
        grid.push_back({{KernelType::kRbf, 1.0}, c});
    }
    const auto cv = cross_validate(sep.x, sep.y, grid, 5, 3);
    for (const auto& cell : cv.cells) CHECK(cell.mean_accuracy >= 0.95);
}

TEST_CASE("cell ordering rules") {
    const CellScore lin{{{KernelType::kLinear, 0.0}, 1.0}, {}, 0.9};
    const CellScore rbf{{{KernelType::kRbf, 0.1}, 1.0}, {}, 0.9};
    const CellScore rbf_small{{{KernelType::kRbf, 0.01}, 1.0}, {}, 0.9};
    const CellScore big_c{{{KernelType::kLinear, 0.0}, 10.0}, {}, 0.9};
    const CellScore better{{{KernelType::kRbf, 0.1}, 100.0}, {}, 0.95};
    CHECK(better_cell(lin, rbf));
    CHECK(better_cell(rbf_small, rbf));
    CHECK(better_cell(rbf, big_c));
    CHECK(better_cell(better, lin));
    CHECK_FALSE(better_cell(lin, lin));
}

TEST_CASE("default grid") {
    const Fixture f = noisy(60, 9);
    const auto grid = default_grid(f.x);
    CHECK(grid.size() == 16);
    const double gamma = default_gamma(f.x);
    CHECK(gamma == doctest::Approx(1.0 / 4.0));  // standardized variance is 1
    CHECK(grid[0].kernel.type == KernelType::kLinear);
    CHECK(grid[0].c == 0.1);
    CHECK(grid[1].kernel.gamma == doctest::Approx(gamma));
}

TEST_CASE("model persistence") {
    test::TempDir dir;
    const Fixture f = noisy(60, 10);
    SvmModel m = train_svc(f.x, f.y, {KernelType::kRbf, 0.2}, 3.0);
    m.metadata["config_hash"] = "abc";
    save_model(dir.path() / "m.txt", m);
    const SvmModel back = load_model(dir.path() / "m.txt", 4);
    CHECK(back.metadata.at("config_hash") == "abc");
    for (Eigen::Index i = 0; i < f.x.rows(); ++i) {
        CHECK(back.decision(f.x.row(i).transpose()) == m.decision(f.x.row(i).transpose()));
    }
    CHECK(serialize_model(back) == serialize_model(m));
    CHECK(test::error_code([&] { load_model(dir.path() / "m.txt", 40); }) == ErrorCode::kConfig);
    test::write_file(dir.path() / "bad.txt", "not a model\n");
    CHECK(test::error_code([&] { load_model(dir.path() / "bad.txt", 4); }).has_value());
}

TEST_CASE("protocol: split, search, refit and report are reproducible") {
    const Fixture f = noisy(200, 11);
    ProtocolConfig config;
    config.seed = 5;
    const ProtocolResult a = run_protocol(f.x, f.y, config);
    const ProtocolResult b = run_protocol(f.x, f.y, config);
    CHECK(a.split.test.size() == 30);
    CHECK(a.cv.cells.size() == 16);
    CHECK(a.test_report.total() == 30);
    CHECK(a.train_report.total() == 170);
    CHECK(serialize_model(a.model) == serialize_model(b.model));
    CHECK(a.test_report.accuracy > 0.7);
}
