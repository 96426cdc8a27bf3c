#include "pipeline.hpp"

namespace eegtda {

SegmentAnalysis analyze_segment(const Eigen::MatrixXd& data, double rate, const SegmentAnalysisOptions& options) {
    SegmentAnalysis out;
    if (options.method == Reduction::kDyca) {
        DycaResult r = dyca(data, rate, options.dyca);
        out.trajectory = std::move(r.trajectory);
        out.eigenvalues = std::move(r.eigenvalues);
    } else {
        PcaResult r = pca(data, options.dyca.n, rate);
        out.trajectory = std::move(r.trajectory);
        out.eigenvalues = std::move(r.eigenvalues);
    }
    out.diagram = persistence(build_filtration(out.trajectory.points, options.max_length));
    const int levels = std::max(options.landscape_levels, kDefaultLandscapeLevels);
    out.landscapes = {build_landscape(out.diagram, 0, levels), build_landscape(out.diagram, 1, levels)};
    out.features = extract_features(out.diagram, out.landscapes);
    return out;
}

}  // namespace eegtda
