#include "svm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "error.hpp"
#include "text.hpp"

namespace eegtda {

// ---------------------------------------------------------------------------
// Scaling

Eigen::MatrixXd Scaler::apply(const Eigen::MatrixXd& x) const {
    if (x.cols() != means.size()) {
        fail(ErrorCode::kConfig, "scaler expects " + std::to_string(means.size()) + " features, got " +
                                     std::to_string(x.cols()));
    }
    Eigen::MatrixXd out = x.rowwise() - means.transpose();
    out.array().rowwise() /= stds.transpose().array();
    return out;
}

Scaler fit_scaler(const Eigen::MatrixXd& x) {
    if (x.rows() < 2) {
        fail(ErrorCode::kInsufficientData, "scaler needs at least 2 samples, got " + std::to_string(x.rows()));
    }
    Scaler s;
    s.means = x.colwise().mean().transpose();
    const Eigen::MatrixXd centered = x.rowwise() - s.means.transpose();
    s.stds = (centered.colwise().squaredNorm() / static_cast<double>(x.rows())).cwiseSqrt().transpose();
    for (Eigen::Index i = 0; i < s.stds.size(); ++i) {
        if (!(s.stds(i) > 0.0)) s.stds(i) = 1.0;
    }
    return s;
}

Eigen::MatrixXd apply_scaler(const Scaler& scaler, const Eigen::MatrixXd& x) { return scaler.apply(x); }

// ---------------------------------------------------------------------------
// Kernels

double Kernel::operator()(const Eigen::Ref<const Eigen::VectorXd>& a,
                          const Eigen::Ref<const Eigen::VectorXd>& b) const {
    if (type == KernelType::kLinear) return a.dot(b);
    return std::exp(-gamma * (a - b).squaredNorm());
}

std::string Kernel::describe() const {
    return type == KernelType::kLinear ? "linear" : "rbf(gamma=" + format_double(gamma) + ")";
}

Eigen::MatrixXd kernel_matrix(const Kernel& kernel, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd k = a * b.transpose();
    if (kernel.type == KernelType::kRbf) {
        const Eigen::VectorXd na = a.rowwise().squaredNorm();
        const Eigen::VectorXd nb = b.rowwise().squaredNorm();
        for (Eigen::Index j = 0; j < k.cols(); ++j) {
            for (Eigen::Index i = 0; i < k.rows(); ++i) {
                const double d2 = std::max(0.0, na(i) + nb(j) - 2.0 * k(i, j));
                k(i, j) = std::exp(-kernel.gamma * d2);
            }
        }
    }
    return k;
}

// ---------------------------------------------------------------------------
// SMO

namespace {

constexpr double kTau = 1e-12;

struct DualSolution {
    Eigen::VectorXd alpha;
    double rho = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    double gap = 0.0;
};

// Minimizes 1/2 a'Qa - e'a, 0 <= a <= c, y'a = 0 with Q_ij = y_i y_j K_ij.
DualSolution solve_dual(const Eigen::MatrixXd& k, const Labels& y, double c, const TrainOptions& options) {
    const auto n = static_cast<Eigen::Index>(y.size());
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd grad = Eigen::VectorXd::Constant(n, -1.0);
    auto yv = [&y](Eigen::Index t) { return static_cast<double>(y[static_cast<std::size_t>(t)]); };
    auto at_upper = [&](Eigen::Index t) { return alpha(t) >= c; };
    auto at_lower = [&](Eigen::Index t) { return alpha(t) <= 0.0; };

    DualSolution sol;
    const auto budget = static_cast<std::size_t>(std::max(1, options.max_passes)) * static_cast<std::size_t>(n);
    std::size_t iter = 0;
    for (; iter < budget; ++iter) {
        double gmax = -std::numeric_limits<double>::infinity();
        Eigen::Index i = -1;
        for (Eigen::Index t = 0; t < n; ++t) {
            if (yv(t) > 0) {
                if (!at_upper(t) && -grad(t) >= gmax) { gmax = -grad(t); i = t; }
            } else {
                if (!at_lower(t) && grad(t) >= gmax) { gmax = grad(t); i = t; }
            }
        }
        double gmax2 = -std::numeric_limits<double>::infinity();
        double best_obj = std::numeric_limits<double>::infinity();
        Eigen::Index j = -1;
        for (Eigen::Index t = 0; t < n && i >= 0; ++t) {
            double grad_diff = 0.0;
            if (yv(t) > 0) {
                if (at_lower(t)) continue;
                grad_diff = gmax + grad(t);
                gmax2 = std::max(gmax2, grad(t));
            } else {
                if (at_upper(t)) continue;
                grad_diff = gmax - grad(t);
                gmax2 = std::max(gmax2, -grad(t));
            }
            if (grad_diff > 0.0) {
                double quad = k(i, i) + k(t, t) - 2.0 * k(i, t);
                if (quad <= 0.0) quad = kTau;
                const double obj = -(grad_diff * grad_diff) / quad;
                if (obj <= best_obj) { best_obj = obj; j = t; }
            }
        }
        sol.gap = gmax + gmax2;
        if (i < 0 || j < 0 || sol.gap < options.tol) {
            sol.converged = true;
            break;
        }

        const double yi = yv(i), yj = yv(j);
        const double old_i = alpha(i), old_j = alpha(j);
        const double qij = yi * yj * k(i, j);
        if (yi != yj) {
            double quad = k(i, i) + k(j, j) + 2.0 * qij;
            if (quad <= 0.0) quad = kTau;
            const double delta = (-grad(i) - grad(j)) / quad;
            const double diff = alpha(i) - alpha(j);
            alpha(i) += delta;
            alpha(j) += delta;
            if (diff > 0.0) {
                if (alpha(j) < 0.0) { alpha(j) = 0.0; alpha(i) = diff; }
            } else {
                if (alpha(i) < 0.0) { alpha(i) = 0.0; alpha(j) = -diff; }
            }
            if (diff > 0.0) {
                if (alpha(i) > c) { alpha(i) = c; alpha(j) = c - diff; }
            } else {
                if (alpha(j) > c) { alpha(j) = c; alpha(i) = c + diff; }
            }
        } else {
            double quad = k(i, i) + k(j, j) - 2.0 * qij;
            if (quad <= 0.0) quad = kTau;
            const double delta = (grad(i) - grad(j)) / quad;
            const double sum = alpha(i) + alpha(j);
            alpha(i) -= delta;
            alpha(j) += delta;
            if (sum > c) {
                if (alpha(i) > c) { alpha(i) = c; alpha(j) = sum - c; }
            } else {
                if (alpha(j) < 0.0) { alpha(j) = 0.0; alpha(i) = sum; }
            }
            if (sum > c) {
                if (alpha(j) > c) { alpha(j) = c; alpha(i) = sum - c; }
            } else {
                if (alpha(i) < 0.0) { alpha(i) = 0.0; alpha(j) = sum; }
            }
        }
        const double di = alpha(i) - old_i;
        const double dj = alpha(j) - old_j;
        for (Eigen::Index t = 0; t < n; ++t) {
            grad(t) += yv(t) * (yi * k(t, i) * di + yj * k(t, j) * dj);
        }
    }
    sol.iterations = iter;

    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double free_sum = 0.0;
    std::size_t free_count = 0;
    for (Eigen::Index t = 0; t < n; ++t) {
        const double yg = yv(t) * grad(t);
        if (at_upper(t)) {
            if (yv(t) < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else if (at_lower(t)) {
            if (yv(t) > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else {
            ++free_count;
            free_sum += yg;
        }
    }
    sol.rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : 0.5 * (ub + lb);
    sol.alpha = std::move(alpha);
    return sol;
}

void check_training_input(const Eigen::MatrixXd& x, const Labels& y, double c) {
    if (static_cast<Eigen::Index>(y.size()) != x.rows()) {
        fail(ErrorCode::kConfig, "feature matrix has " + std::to_string(x.rows()) + " rows but " +
                                     std::to_string(y.size()) + " labels");
    }
    if (!(c > 0.0)) fail(ErrorCode::kConfig, "C must be positive");
    bool pos = false, neg = false;
    for (int v : y) {
        if (v == 1) pos = true;
        else if (v == -1) neg = true;
        else fail(ErrorCode::kConfig, "labels must be +1 or -1");
    }
    if (!pos || !neg) fail(ErrorCode::kConfig, "training data contains a single class");
    if (!x.allFinite()) fail(ErrorCode::kData, "feature matrix contains non-finite values");
}

// Trains on already scaled features with a precomputed kernel matrix. The
// labels are flipped internally so that sample 0 is always +1, which makes
// the solver path, and therefore the model, exactly antisymmetric under a
// global label flip.
SvmModel train_scaled(const Eigen::MatrixXd& scaled, const Eigen::MatrixXd& k, const Labels& y,
                      const Kernel& kernel, double c, const TrainOptions& options) {
    const int orientation = y.front();
    Labels canonical(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) canonical[i] = y[i] * orientation;
    const DualSolution sol = solve_dual(k, canonical, c, options);

    SvmModel model;
    model.kernel = kernel;
    model.c = c;
    model.converged = sol.converged;
    model.iterations = sol.iterations;
    model.kkt_gap = sol.gap;
    for (Eigen::Index t = 0; t < sol.alpha.size(); ++t) {
        if (sol.alpha(t) > 0.0) model.support_indices.push_back(static_cast<std::size_t>(t));
    }
    model.support_vectors.resize(static_cast<Eigen::Index>(model.support_indices.size()), scaled.cols());
    model.coefficients.resize(static_cast<Eigen::Index>(model.support_indices.size()));
    for (std::size_t s = 0; s < model.support_indices.size(); ++s) {
        const auto t = static_cast<Eigen::Index>(model.support_indices[s]);
        model.support_vectors.row(static_cast<Eigen::Index>(s)) = scaled.row(t);
        model.coefficients(static_cast<Eigen::Index>(s)) = sol.alpha(t) * static_cast<double>(y[static_cast<std::size_t>(t)]);
    }
    model.bias = -sol.rho * static_cast<double>(orientation);
    return model;
}

}  // namespace

double SvmModel::decision(const Eigen::Ref<const Eigen::VectorXd>& raw) const {
    if (raw.size() != scaler.means.size()) {
        fail(ErrorCode::kConfig, "model expects " + std::to_string(scaler.means.size()) + " features, got " +
                                     std::to_string(raw.size()));
    }
    const Eigen::VectorXd x = (raw - scaler.means).cwiseQuotient(scaler.stds);
    double sum = 0.0;
    for (Eigen::Index s = 0; s < support_vectors.rows(); ++s) {
        sum += coefficients(s) * kernel(support_vectors.row(s).transpose(), x);
    }
    return sum + bias;
}

int SvmModel::predict(const Eigen::Ref<const Eigen::VectorXd>& raw) const {
    return decision(raw) > 0.0 ? 1 : -1;
}

std::vector<int> SvmModel::predict_all(const Eigen::MatrixXd& raw) const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(raw.rows()));
    for (Eigen::Index r = 0; r < raw.rows(); ++r) out.push_back(predict(raw.row(r).transpose()));
    return out;
}

SvmModel train_svc(const Eigen::MatrixXd& x, const Labels& y, const Kernel& kernel, double c,
                   const TrainOptions& options) {
    check_training_input(x, y, c);
    Scaler scaler = fit_scaler(x);
    const Eigen::MatrixXd scaled = scaler.apply(x);
    SvmModel model = train_scaled(scaled, kernel_matrix(kernel, scaled, scaled), y, kernel, c, options);
    model.scaler = std::move(scaler);
    return model;
}

std::size_t EvalReport::total() const noexcept {
    return confusion[0][0] + confusion[0][1] + confusion[1][0] + confusion[1][1];
}

EvalReport evaluate(const SvmModel& model, const Eigen::MatrixXd& x, const Labels& y) {
    if (x.rows() < 1) fail(ErrorCode::kInsufficientData, "evaluation needs at least one sample");
    if (static_cast<Eigen::Index>(y.size()) != x.rows()) {
        fail(ErrorCode::kConfig, "feature matrix has " + std::to_string(x.rows()) + " rows but " +
                                     std::to_string(y.size()) + " labels");
    }
    EvalReport report;
    const std::vector<int> pred = model.predict_all(x);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const std::size_t t = y[i] > 0 ? 1 : 0;
        const std::size_t p = pred[i] > 0 ? 1 : 0;
        ++report.confusion[t][p];
        if (t == p) ++correct;
    }
    report.accuracy = static_cast<double>(correct) / static_cast<double>(y.size());
    return report;
}

// ---------------------------------------------------------------------------
// Splits and grid search

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& x, const std::vector<std::size_t>& rows) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = x.row(static_cast<Eigen::Index>(rows[r]));
    return out;
}

Labels select(const Labels& y, const std::vector<std::size_t>& rows) {
    Labels out;
    out.reserve(rows.size());
    for (std::size_t r : rows) out.push_back(y[r]);
    return out;
}

namespace {

// Per-class index lists, positive class first, each shuffled.
std::array<std::vector<std::size_t>, 2> shuffled_classes(const Labels& y, std::uint64_t seed) {
    std::array<std::vector<std::size_t>, 2> classes;
    for (std::size_t i = 0; i < y.size(); ++i) classes[y[i] > 0 ? 0 : 1].push_back(i);
    std::mt19937_64 rng(seed);
    for (auto& c : classes) std::shuffle(c.begin(), c.end(), rng);
    return classes;
}

}  // namespace

std::vector<std::vector<std::size_t>> stratified_folds(const Labels& y, int folds, std::uint64_t seed) {
    if (folds < 2) fail(ErrorCode::kConfig, "cross-validation needs at least 2 folds");
    const auto classes = shuffled_classes(y, seed);
    for (const auto& c : classes) {
        if (c.size() < static_cast<std::size_t>(folds)) {
            fail(ErrorCode::kConfig, "a class has " + std::to_string(c.size()) +
                                         " samples, fewer than the " + std::to_string(folds) +
                                         " folds needed for stratification");
        }
    }
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(folds));
    std::size_t next = 0;
    for (const auto& c : classes) {
        for (std::size_t idx : c) out[next++ % out.size()].push_back(idx);
    }
    for (auto& f : out) std::sort(f.begin(), f.end());
    return out;
}

Split stratified_split(const Labels& y, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        fail(ErrorCode::kConfig, "test fraction must lie in (0, 1)");
    }
    const auto classes = shuffled_classes(y, seed);
    Split split;
    for (const auto& c : classes) {
        if (c.size() < 2) fail(ErrorCode::kConfig, "each class needs at least 2 samples to split");
        auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(c.size())));
        n_test = std::clamp<std::size_t>(n_test, 1, c.size() - 1);
        split.test.insert(split.test.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n_test));
        split.train.insert(split.train.end(), c.begin() + static_cast<std::ptrdiff_t>(n_test), c.end());
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

bool better_cell(const CellScore& a, const CellScore& b) {
    if (a.mean_accuracy != b.mean_accuracy) return a.mean_accuracy > b.mean_accuracy;
    if (a.cell.c != b.cell.c) return a.cell.c < b.cell.c;
    if (a.cell.kernel.type != b.cell.kernel.type) return a.cell.kernel.type == KernelType::kLinear;
    return a.cell.kernel.gamma < b.cell.kernel.gamma;
}

CrossValidation cross_validate(const Eigen::MatrixXd& x, const Labels& y, const std::vector<GridCell>& grid,
                               int folds, std::uint64_t seed, const TrainOptions& options) {
    if (grid.empty()) fail(ErrorCode::kConfig, "parameter grid is empty");
    check_training_input(x, y, 1.0);
    for (const auto& cell : grid) {
        if (!(cell.c > 0.0)) fail(ErrorCode::kConfig, "grid contains a non-positive C");
    }
    const auto fold_sets = stratified_folds(y, folds, seed);

    CrossValidation cv;
    for (const auto& cell : grid) cv.cells.push_back({cell, {}, 0.0});

    // Group cells sharing a kernel so each fold computes each kernel matrix
    // once.
    std::vector<Kernel> kernels;
    std::vector<std::size_t> kernel_of(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        auto it = std::find_if(kernels.begin(), kernels.end(), [&](const Kernel& k) {
            return k.type == grid[g].kernel.type && k.gamma == grid[g].kernel.gamma;
        });
        if (it == kernels.end()) {
            kernels.push_back(grid[g].kernel);
            kernel_of[g] = kernels.size() - 1;
        } else {
            kernel_of[g] = static_cast<std::size_t>(it - kernels.begin());
        }
    }

    for (const auto& test_rows : fold_sets) {
        std::vector<bool> in_test(y.size(), false);
        for (std::size_t r : test_rows) in_test[r] = true;
        std::vector<std::size_t> train_rows;
        for (std::size_t r = 0; r < y.size(); ++r) {
            if (!in_test[r]) train_rows.push_back(r);
        }
        const Labels y_train = select(y, train_rows);
        const Labels y_test = select(y, test_rows);
        const Eigen::MatrixXd x_train = select_rows(x, train_rows);
        const Eigen::MatrixXd x_test = select_rows(x, test_rows);
        const Scaler scaler = fit_scaler(x_train);
        const Eigen::MatrixXd s_train = scaler.apply(x_train);
        for (std::size_t kidx = 0; kidx < kernels.size(); ++kidx) {
            const Eigen::MatrixXd k = kernel_matrix(kernels[kidx], s_train, s_train);
            for (std::size_t g = 0; g < grid.size(); ++g) {
                if (kernel_of[g] != kidx) continue;
                SvmModel model = train_scaled(s_train, k, y_train, kernels[kidx], grid[g].c, options);
                model.scaler = scaler;
                cv.cells[g].fold_accuracies.push_back(evaluate(model, x_test, y_test).accuracy);
            }
        }
    }
    for (auto& cell : cv.cells) {
        double sum = 0.0;
        for (double a : cell.fold_accuracies) sum += a;
        cell.mean_accuracy = sum / static_cast<double>(cell.fold_accuracies.size());
    }
    const CellScore* best = &cv.cells.front();
    for (const auto& cell : cv.cells) {
        if (better_cell(cell, *best)) best = &cell;
    }
    cv.best = best->cell;
    return cv;
}

double default_gamma(const Eigen::MatrixXd& x) {
    const Eigen::MatrixXd scaled = fit_scaler(x).apply(x);
    const double var = (scaled.colwise().squaredNorm() / static_cast<double>(scaled.rows())).mean();
    const double d = static_cast<double>(x.cols());
    return var > 0.0 ? 1.0 / (d * var) : 1.0 / d;
}

std::vector<GridCell> default_grid(const Eigen::MatrixXd& x) {
    const double auto_gamma = default_gamma(x);
    std::vector<GridCell> grid;
    for (double c : {0.1, 1.0, 10.0, 100.0}) {
        grid.push_back({{KernelType::kLinear, 0.0}, c});
        for (double gamma : {auto_gamma, 0.01, 0.1}) grid.push_back({{KernelType::kRbf, gamma}, c});
    }
    return grid;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

std::string hex(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

double unhex(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') fail(ErrorCode::kParse, "model file: bad number '" + s + "'");
    return v;
}

}  // namespace

std::string serialize_model(const SvmModel& model) {
    std::ostringstream out;
    out << kModelFormatTag << ' ' << kModelFormatVersion << '\n';
    for (const auto& [key, value] : model.metadata) out << "meta " << key << ' ' << value << '\n';
    out << "features " << model.feature_count() << '\n';
    out << "kernel " << (model.kernel.type == KernelType::kLinear ? "linear" : "rbf") << '\n';
    out << "gamma " << hex(model.kernel.gamma) << '\n';
    out << "c " << hex(model.c) << '\n';
    out << "bias " << hex(model.bias) << '\n';
    out << "converged " << (model.converged ? 1 : 0) << '\n';
    out << "scaler_mean";
    for (Eigen::Index i = 0; i < model.scaler.means.size(); ++i) out << ' ' << hex(model.scaler.means(i));
    out << "\nscaler_std";
    for (Eigen::Index i = 0; i < model.scaler.stds.size(); ++i) out << ' ' << hex(model.scaler.stds(i));
    out << "\nsupport_vectors " << model.support_vectors.rows() << '\n';
    for (Eigen::Index s = 0; s < model.support_vectors.rows(); ++s) {
        out << "sv " << hex(model.coefficients(s));
        for (Eigen::Index j = 0; j < model.support_vectors.cols(); ++j) out << ' ' << hex(model.support_vectors(s, j));
        out << '\n';
    }
    out << "end\n";
    return out.str();
}

SvmModel deserialize_model(const std::string& text, std::size_t expected_features) {
    std::istringstream in(text);
    std::string tag;
    int version = 0;
    if (!(in >> tag >> version) || tag != kModelFormatTag) {
        fail(ErrorCode::kParse, "not a model file (missing '" + std::string(kModelFormatTag) + "' tag)");
    }
    if (version != kModelFormatVersion) {
        fail(ErrorCode::kUnsupportedFormat, "model format version " + std::to_string(version) + " is not supported");
    }
    SvmModel model;
    std::size_t features = 0;
    std::size_t sv_count = 0;
    std::vector<std::vector<double>> rows;
    std::vector<double> coefs;
    auto read_vector = [&in](std::size_t n) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(n));
        std::string tok;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(in >> tok)) fail(ErrorCode::kParse, "model file truncated");
            v(static_cast<Eigen::Index>(i)) = unhex(tok);
        }
        return v;
    };
    std::string key;
    bool ended = false;
    while (in >> key) {
        std::string tok;
        if (key == "meta") {
            std::string name;
            in >> name;
            std::getline(in, tok);
            model.metadata[name] = trim(tok);
        } else if (key == "features") {
            in >> features;
            if (features != expected_features) {
                fail(ErrorCode::kConfig, "model was trained on " + std::to_string(features) +
                                             " features, expected " + std::to_string(expected_features));
            }
        } else if (key == "kernel") {
            in >> tok;
            if (tok == "linear") model.kernel.type = KernelType::kLinear;
            else if (tok == "rbf") model.kernel.type = KernelType::kRbf;
            else fail(ErrorCode::kParse, "model file: unknown kernel '" + tok + "'");
        } else if (key == "gamma") {
            in >> tok;
            model.kernel.gamma = unhex(tok);
        } else if (key == "c") {
            in >> tok;
            model.c = unhex(tok);
        } else if (key == "bias") {
            in >> tok;
            model.bias = unhex(tok);
        } else if (key == "converged") {
            int flag = 0;
            in >> flag;
            model.converged = flag != 0;
        } else if (key == "scaler_mean") {
            model.scaler.means = read_vector(features);
        } else if (key == "scaler_std") {
            model.scaler.stds = read_vector(features);
        } else if (key == "support_vectors") {
            in >> sv_count;
        } else if (key == "sv") {
            const Eigen::VectorXd v = read_vector(features + 1);
            coefs.push_back(v(0));
            rows.emplace_back(v.data() + 1, v.data() + v.size());
        } else if (key == "end") {
            ended = true;
            break;
        } else {
            fail(ErrorCode::kParse, "model file: unknown key '" + key + "'");
        }
        if (!in) fail(ErrorCode::kParse, "model file: malformed '" + key + "' entry");
    }
    if (!ended || features == 0 || rows.size() != sv_count ||
        static_cast<std::size_t>(model.scaler.means.size()) != features ||
        static_cast<std::size_t>(model.scaler.stds.size()) != features) {
        fail(ErrorCode::kParse, "model file is incomplete");
    }
    model.support_vectors.resize(static_cast<Eigen::Index>(sv_count), static_cast<Eigen::Index>(features));
    model.coefficients.resize(static_cast<Eigen::Index>(sv_count));
    for (std::size_t s = 0; s < sv_count; ++s) {
        model.coefficients(static_cast<Eigen::Index>(s)) = coefs[s];
        for (std::size_t j = 0; j < features; ++j) {
            model.support_vectors(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(j)) = rows[s][j];
        }
    }
    return model;
}

void save_model(const std::filesystem::path& path, const SvmModel& model) {
    write_text_file(path, serialize_model(model));
}

SvmModel load_model(const std::filesystem::path& path, std::size_t expected_features) {
    return deserialize_model(read_text_file(path), expected_features);
}

}  // namespace eegtda
