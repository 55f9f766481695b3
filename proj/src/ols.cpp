#include <Eigen/Cholesky>
#include <cmath>

#include "windvar/errors.hpp"
#include "windvar/models.hpp"

namespace windvar {

OlsResult ols_fit(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
    if (X.rows() != Y.rows()) throw DomainError("design and target row counts differ");
    if (X.rows() == 0 || X.cols() == 0) throw InsufficientDataError("empty design matrix");

    const Eigen::Index f = X.cols();
    const Eigen::MatrixXd gram = X.transpose() * X;
    const Eigen::MatrixXd rhs = X.transpose() * Y;

    OlsResult res;
    res.rows = X.rows();

    Eigen::MatrixXd bt;  // F x N
    bool need_ridge = X.rows() < f;
    if (!need_ridge) {
        bt = gram.ldlt().solve(rhs);
        if (!bt.allFinite()) {
            need_ridge = true;
        } else {
            // Normal-equation residual: X'(Y - X B') must vanish at the optimum.
            const double misfit = (rhs - gram * bt).cwiseAbs().maxCoeff();
            const double scale = std::max(rhs.cwiseAbs().maxCoeff(), 1e-30);
            if (misfit > 1e-6 * scale) need_ridge = true;
        }
    }
    if (need_ridge) {
        const double lambda = 1e-8 * gram.trace() / static_cast<double>(f);
        const Eigen::MatrixXd reg =
            gram + lambda * Eigen::MatrixXd::Identity(f, f);
        bt = reg.ldlt().solve(rhs);
        if (!bt.allFinite()) throw DomainError("design matrix singular even with ridge fallback");
        res.ridge = true;
    }
    res.coeff = bt.transpose();
    const Eigen::MatrixXd resid = Y - X * bt;
    res.residual_rms =
        std::sqrt(resid.squaredNorm() / static_cast<double>(resid.rows() * resid.cols()));
    return res;
}

}  // namespace windvar
