#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace eegtda {

// Labels are +1 (IED) and -1 (background).
using Labels = std::vector<int>;

struct Scaler {
    Eigen::VectorXd means;
    Eigen::VectorXd stds;  // zeros replaced by 1

    Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
};

Scaler fit_scaler(const Eigen::MatrixXd& x);
Eigen::MatrixXd apply_scaler(const Scaler& scaler, const Eigen::MatrixXd& x);

enum class KernelType { kLinear, kRbf };

struct Kernel {
    KernelType type = KernelType::kLinear;
    double gamma = 0.0;

    double operator()(const Eigen::Ref<const Eigen::VectorXd>& a,
                      const Eigen::Ref<const Eigen::VectorXd>& b) const;
    std::string describe() const;
};

Eigen::MatrixXd kernel_matrix(const Kernel& kernel, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct TrainOptions {
    double tol = 1e-3;
    // Iteration budget is max_passes times the number of samples.
    int max_passes = 200;
};

struct SvmModel {
    Kernel kernel;
    double c = 1.0;
    Scaler scaler;
    Eigen::MatrixXd support_vectors;  // scaled features, one row each
    Eigen::VectorXd coefficients;     // alpha_i * y_i
    double bias = 0.0;                // decision = sum coef K(sv, x) + bias
    bool converged = true;
    std::size_t iterations = 0;
    double kkt_gap = 0.0;
    std::vector<std::size_t> support_indices;  // rows of the training matrix
    std::map<std::string, std::string> metadata;

    std::size_t feature_count() const noexcept { return static_cast<std::size_t>(scaler.means.size()); }
    double decision(const Eigen::Ref<const Eigen::VectorXd>& raw) const;
    int predict(const Eigen::Ref<const Eigen::VectorXd>& raw) const;
    std::vector<int> predict_all(const Eigen::MatrixXd& raw) const;
};

/// SMO with second-order working-set selection. Fits the scaler on `x`.
SvmModel train_svc(const Eigen::MatrixXd& x, const Labels& y, const Kernel& kernel, double c,
                   const TrainOptions& options = {});

struct EvalReport {
    double accuracy = 0.0;
    // confusion[true][predicted], index 0 = background, 1 = IED
    std::array<std::array<std::size_t, 2>, 2> confusion{};
    std::vector<double> fold_accuracies;

    std::size_t total() const noexcept;
};

EvalReport evaluate(const SvmModel& model, const Eigen::MatrixXd& x, const Labels& y);

struct GridCell {
    Kernel kernel;
    double c = 1.0;
};

struct CellScore {
    GridCell cell;
    std::vector<double> fold_accuracies;
    double mean_accuracy = 0.0;
};

struct CrossValidation {
    GridCell best;
    std::vector<CellScore> cells;  // in grid order
};

/// Stratified fold assignment: each class is shuffled with `seed` and dealt
/// round-robin. Returns the test indices of each fold.
std::vector<std::vector<std::size_t>> stratified_folds(const Labels& y, int folds, std::uint64_t seed);

struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

Split stratified_split(const Labels& y, double test_fraction, std::uint64_t seed);

/// Ties in mean accuracy go to smaller C, then linear before RBF, then
/// smaller gamma.
CrossValidation cross_validate(const Eigen::MatrixXd& x, const Labels& y, const std::vector<GridCell>& grid,
                               int folds, std::uint64_t seed, const TrainOptions& options = {});

/// C in {0.1, 1, 10, 100} times {linear, RBF with gamma in
/// {1/(d * var), 0.01, 0.1}}, var being the mean per-feature variance of the
/// standardized data and d the feature count.
std::vector<GridCell> default_grid(const Eigen::MatrixXd& x);

// 1/(d * var) from the expression above.
double default_gamma(const Eigen::MatrixXd& x);

bool better_cell(const CellScore& a, const CellScore& b);

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& x, const std::vector<std::size_t>& rows);
Labels select(const Labels& y, const std::vector<std::size_t>& rows);

inline constexpr const char* kModelFormatTag = "eegtda-svm";
inline constexpr int kModelFormatVersion = 1;

std::string serialize_model(const SvmModel& model);
SvmModel deserialize_model(const std::string& text, std::size_t expected_features);
void save_model(const std::filesystem::path& path, const SvmModel& model);
SvmModel load_model(const std::filesystem::path& path, std::size_t expected_features);

}  // namespace eegtda
