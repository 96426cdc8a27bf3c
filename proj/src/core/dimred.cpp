#include "dimred.hpp"

#include <cmath>
#include <string>

#include "error.hpp"
#include "text.hpp"

namespace eegtda {

namespace {

constexpr double kRegularization = 1e-10;

Eigen::MatrixXd center_rows(const Eigen::MatrixXd& data) {
    return data.colwise() - data.rowwise().mean();
}

void symmetrize(Eigen::MatrixXd& m) { m = 0.5 * (m + m.transpose()).eval(); }

// Flip each column so its largest-magnitude entry is positive (first one on
// exact ties).
void fix_signs(Eigen::MatrixXd& columns) {
    for (Eigen::Index c = 0; c < columns.cols(); ++c) {
        Eigen::Index best = 0;
        columns.col(c).cwiseAbs().maxCoeff(&best);
        if (columns(best, c) < 0.0) columns.col(c) *= -1.0;
    }
}

Eigen::MatrixXd regularized(const Eigen::MatrixXd& c) {
    const double shift = kRegularization * c.trace() / static_cast<double>(c.rows());
    Eigen::MatrixXd out = c;
    out.diagonal().array() += shift;
    return out;
}

void check_data(const Eigen::MatrixXd& data) {
    if (data.rows() < 1) fail(ErrorCode::kInsufficientData, "segment has no channels");
    if (!data.allFinite()) fail(ErrorCode::kData, "segment contains non-finite samples");
}

}  // namespace

const char* to_string(Reduction method) noexcept {
    return method == Reduction::kPca ? "PCA" : "DYCA";
}

Eigen::MatrixXd derivative(const Eigen::MatrixXd& data, double rate) {
    const Eigen::Index w = data.cols();
    if (w < 3) {
        fail(ErrorCode::kInsufficientData, "derivative needs at least 3 samples, got " + std::to_string(w));
    }
    Eigen::MatrixXd out(data.rows(), w);
    out.col(0) = (data.col(1) - data.col(0)) * rate;
    out.middleCols(1, w - 2) = (data.rightCols(w - 2) - data.leftCols(w - 2)) * (0.5 * rate);
    out.col(w - 1) = (data.col(w - 1) - data.col(w - 2)) * rate;
    return out;
}

CorrelationSet correlations(const Eigen::MatrixXd& data, double rate) {
    check_data(data);
    const Eigen::MatrixXd q = center_rows(data);
    const Eigen::MatrixXd dq = derivative(q, rate);
    const double inv_w = 1.0 / static_cast<double>(q.cols());
    CorrelationSet set;
    set.c0 = inv_w * q * q.transpose();
    set.c1 = inv_w * dq * q.transpose();
    set.c2 = inv_w * dq * dq.transpose();
    symmetrize(set.c0);
    symmetrize(set.c2);
    return set;
}

PcaResult pca(const Eigen::MatrixXd& data, int n, double rate) {
    check_data(data);
    const Eigen::Index m = data.rows();
    const Eigen::Index w = data.cols();
    if (n < 1 || n > std::min<Eigen::Index>(m, w - 1)) {
        fail(ErrorCode::kConfig, "PCA needs 1 <= n <= min(channels, samples - 1), got n = " +
                                     std::to_string(n));
    }
    const Eigen::MatrixXd q = center_rows(data);
    Eigen::MatrixXd c0 = q * q.transpose() / static_cast<double>(w);
    symmetrize(c0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c0);
    if (eig.info() != Eigen::Success) fail(ErrorCode::kNumerical, "PCA eigensolver failed");

    PcaResult result;
    result.eigenvalues = eig.eigenvalues().reverse();
    result.components = eig.eigenvectors().rowwise().reverse().leftCols(n);
    fix_signs(result.components);
    result.trajectory.points = q.transpose() * result.components;
    result.trajectory.method = Reduction::kPca;
    result.trajectory.rate = rate;
    return result;
}

DycaResult dyca(const Eigen::MatrixXd& data, double rate, const DycaOptions& options) {
    check_data(data);
    const Eigen::Index channels = data.rows();
    const int n = options.n;
    const int m = options.m;
    if (m < n - m || n - m < 0) {
        fail(ErrorCode::kConfig, "DyCA needs m >= n - m >= 0, got n = " + std::to_string(n) +
                                     ", m = " + std::to_string(m));
    }
    if (n < 1 || n > channels) {
        fail(ErrorCode::kConfig, "DyCA needs 1 <= n <= channels, got n = " + std::to_string(n));
    }

    // Work on a globally rescaled copy so the result does not depend on the
    // amplitude unit.
    const Eigen::MatrixXd q = center_rows(data);
    const double scale = std::sqrt(q.squaredNorm() / static_cast<double>(q.size()));
    if (!(scale > 0.0)) fail(ErrorCode::kNumerical, "DyCA input is constant");
    const Eigen::MatrixXd qn = q / scale;
    const CorrelationSet corr = correlations(qn, rate);

    const Eigen::LLT<Eigen::MatrixXd> chol0(regularized(corr.c0));
    const Eigen::LLT<Eigen::MatrixXd> chol2(regularized(corr.c2));
    if (chol0.info() != Eigen::Success) {
        fail(ErrorCode::kNumerical, "signal correlation matrix is singular beyond regularization");
    }
    if (chol2.info() != Eigen::Success) {
        fail(ErrorCode::kNumerical, "derivative correlation matrix is singular beyond regularization");
    }

    // Generalized problem  c1 c0^-1 c1' u = lambda c2 u, reduced with the
    // Cholesky factor c2 = L L' to the symmetric problem on y = L' u.
    const Eigen::MatrixXd c0_inv_c1t = chol0.solve(corr.c1.transpose());
    Eigen::MatrixXd lhs = corr.c1 * c0_inv_c1t;
    symmetrize(lhs);
    const auto lower = chol2.matrixL();
    const Eigen::MatrixXd half = lower.solve(lhs);
    Eigen::MatrixXd reduced = lower.solve(half.transpose()).transpose();
    symmetrize(reduced);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(reduced);
    if (eig.info() != Eigen::Success) fail(ErrorCode::kNumerical, "DyCA eigensolver failed");

    DycaResult result;
    result.eigenvalues = eig.eigenvalues().reverse();
    const Eigen::MatrixXd y = eig.eigenvectors().rowwise().reverse();
    const Eigen::MatrixXd u_all = chol2.matrixU().solve(y);

    int selected = m;
    if (options.eig_threshold) {
        selected = static_cast<int>((result.eigenvalues.array() >= *options.eig_threshold).count());
        if (selected != m) {
            std::string spectrum;
            for (Eigen::Index i = 0; i < result.eigenvalues.size(); ++i) {
                if (i) spectrum += ", ";
                spectrum += format_double(result.eigenvalues(i));
            }
            fail(ErrorCode::kAmbiguousModel,
                 "eigenvalue threshold " + format_double(*options.eig_threshold) + " selects " +
                     std::to_string(selected) + " components but m = " + std::to_string(m) +
                     "; spectrum: [" + spectrum + "]");
        }
    }
    if (m > channels) fail(ErrorCode::kConfig, "DyCA needs m <= channels");

    Eigen::MatrixXd basis(channels, n);
    basis.leftCols(m) = u_all.leftCols(m);
    if (n > m) basis.rightCols(n - m) = c0_inv_c1t * u_all.leftCols(n - m);
    fix_signs(basis);

    Eigen::MatrixXd points = qn.transpose() * basis;
    const double inv_w = 1.0 / static_cast<double>(points.rows());
    for (Eigen::Index c = 0; c < n; ++c) {
        const double var = points.col(c).squaredNorm() * inv_w;
        if (!(var > 0.0) || !std::isfinite(var)) {
            fail(ErrorCode::kNumerical, "DyCA component " + std::to_string(c + 1) + " has zero variance");
        }
        const double s = 1.0 / std::sqrt(var);
        points.col(c) *= s;
        basis.col(c) *= s;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(points);
    const Eigen::VectorXd sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 1e-10 * sv(0)) {
        fail(ErrorCode::kNumerical, "DyCA projection vectors are linearly dependent");
    }

    result.trajectory.points = std::move(points);
    result.trajectory.method = Reduction::kDyca;
    result.trajectory.rate = rate;
    result.projection = basis / scale;
    result.m = m;
    return result;
}

}  // namespace eegtda
