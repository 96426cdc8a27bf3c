#pragma once

#include <optional>

#include <Eigen/Dense>

namespace eegtda {

enum class Reduction { kPca, kDyca };

const char* to_string(Reduction method) noexcept;

/// Reduced amplitudes: one row per time instant, one column per component.
struct Trajectory {
    Eigen::MatrixXd points;
    Reduction method = Reduction::kDyca;
    double rate = 0.0;
};

/// Sample correlations of a mean-centered signal q and its derivative:
/// c0 = <q q'>, c1 = <dq q'>, c2 = <dq dq'>.
struct CorrelationSet {
    Eigen::MatrixXd c0;
    Eigen::MatrixXd c1;
    Eigen::MatrixXd c2;
};

struct PcaResult {
    Trajectory trajectory;
    Eigen::VectorXd eigenvalues;  // all M, descending
    Eigen::MatrixXd components;   // M x n
};

struct DycaOptions {
    int n = 3;
    int m = 2;
    // When set, keep every eigenvector with eigenvalue >= threshold and
    // require that count to equal m.
    std::optional<double> eig_threshold;
};

struct DycaResult {
    Trajectory trajectory;
    Eigen::VectorXd eigenvalues;  // all M generalized eigenvalues, descending
    Eigen::MatrixXd projection;   // M x n, applied to mean-centered raw data
    int m = 0;
};

inline constexpr double kDefaultEigThreshold = 0.9;

/// Time derivative along rows: central differences inside, first-order
/// one-sided differences at both ends, scaled by the sampling rate.
Eigen::MatrixXd derivative(const Eigen::MatrixXd& data, double rate);

CorrelationSet correlations(const Eigen::MatrixXd& data, double rate);

PcaResult pca(const Eigen::MatrixXd& data, int n, double rate = 1.0);

DycaResult dyca(const Eigen::MatrixXd& data, double rate, const DycaOptions& options = {});

}  // namespace eegtda
