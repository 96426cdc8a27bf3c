#pragma once

#include <array>
#include <optional>

#include "dimred.hpp"
#include "features.hpp"
#include "homology.hpp"
#include "landscape.hpp"

namespace eegtda {

struct SegmentAnalysisOptions {
    Reduction method = Reduction::kDyca;
    DycaOptions dyca;  // n is used for PCA as well
    std::optional<double> max_length;
    int landscape_levels = kDefaultLandscapeLevels;
};

struct SegmentAnalysis {
    Trajectory trajectory;
    Eigen::VectorXd eigenvalues;  // DyCA generalized or PCA spectrum
    PersistenceDiagram diagram;
    std::array<PersistenceLandscape, 2> landscapes;
    FeatureValues features{};
};

/// Reduction, Rips persistence, landscapes and the feature vector for one
/// channels x samples window.
SegmentAnalysis analyze_segment(const Eigen::MatrixXd& data, double rate, const SegmentAnalysisOptions& options);

}  // namespace eegtda
