#include "protocol.hpp"

#include <numeric>

#include "error.hpp"

namespace eegtda {

ProtocolResult run_protocol(const Eigen::MatrixXd& x, const Labels& y, const ProtocolConfig& config) {
    if (static_cast<std::size_t>(x.rows()) != y.size()) {
        fail(ErrorCode::kConfig, "feature matrix and label list differ in length");
    }
    ProtocolResult out;
    if (config.test_fraction > 0.0) {
        out.split = stratified_split(y, config.test_fraction, config.seed);
    } else {
        out.split.train.resize(y.size());
        std::iota(out.split.train.begin(), out.split.train.end(), std::size_t{0});
    }
    const Eigen::MatrixXd x_train = select_rows(x, out.split.train);
    const Labels y_train = select(y, out.split.train);
    std::vector<GridCell> grid = config.grid.empty() ? default_grid(x_train) : config.grid;
    for (auto& cell : grid) {
        if (cell.kernel.type == KernelType::kRbf && !(cell.kernel.gamma > 0.0)) {
            cell.kernel.gamma = default_gamma(x_train);
        }
    }
    out.cv = cross_validate(x_train, y_train, grid, config.folds, config.seed, config.train);
    out.model = train_svc(x_train, y_train, out.cv.best.kernel, out.cv.best.c, config.train);
    out.train_report = evaluate(out.model, x_train, y_train);
    if (!out.split.test.empty()) {
        out.test_report = evaluate(out.model, select_rows(x, out.split.test), select(y, out.split.test));
    }
    return out;
}

}  // namespace eegtda
