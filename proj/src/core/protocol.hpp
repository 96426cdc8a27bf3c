#pragma once

#include <cstdint>
#include <vector>

#include "svm.hpp"

namespace eegtda {

struct ProtocolConfig {
    // Empty: default_grid of the training part. RBF cells with gamma <= 0 get
    // default_gamma of the training part.
    std::vector<GridCell> grid;
    int folds = 5;
    double test_fraction = 0.15;  // 0 trains and reports on all samples
    std::uint64_t seed = 0;
    TrainOptions train;
};

struct ProtocolResult {
    Split split;
    CrossValidation cv;
    SvmModel model;
    EvalReport train_report;
    EvalReport test_report;  // empty when test_fraction is 0
};

/// Stratified train/test split, grid search by stratified cross-validation
/// on the training part, refit of the best cell on the whole training part,
/// then evaluation on both parts.
ProtocolResult run_protocol(const Eigen::MatrixXd& x, const Labels& y, const ProtocolConfig& config);

}  // namespace eegtda
