#include "refopt/optimizer.hpp"

#include <Eigen/LU>
#include <cmath>
#include <stdexcept>
#include <string>

#include "refopt/cholesky.hpp"
#include "refopt/errors.hpp"

namespace refopt {

LinearSystem build_linear_system(const MomentEstimates& est) {
    const Eigen::Index n = est.securities();
    if (n < 2) throw std::invalid_argument("need at least 2 securities");

    LinearSystem sys;
    sys.securities = n;
    sys.A = Eigen::MatrixXd::Zero(n + 2, n + 2);
    sys.b = Eigen::VectorXd::Zero(n + 2);

    sys.A.topLeftCorner(n, n) = 2.0 * est.sigma;
    sys.A.col(n).head(n) = -est.mu;
    sys.A.col(n + 1).head(n).setConstant(-1.0);
    sys.A.row(n).head(n) = est.mu.transpose();
    sys.A.row(n + 1).head(n).setOnes();
    sys.b[n] = est.mu_rs;
    sys.b[n + 1] = 1.0;
    return sys;
}

HessianCheck check_hessian(const MomentEstimates& est) {
    const CholeskyOutcome out = try_cholesky(2.0 * est.sigma);
    return {out.positive_definite, out.smallest_pivot};
}

OptimalPortfolio solve_optimal_weights(const LinearSystem& sys, const MomentEstimates& est) {
    const Eigen::Index n = sys.securities;
    if (n != est.securities() || sys.A.rows() != n + 2) {
        throw std::invalid_argument("system and estimates disagree on N");
    }

    // mu proportional to the ones vector makes the two constraint rows
    // linearly dependent; the generic solve cannot proceed.
    const double mu_mean = est.mu.mean();
    const double mu_spread = (est.mu.array() - mu_mean).abs().maxCoeff();
    const double mu_tol = 1e-12 * std::max(1.0, est.mu.cwiseAbs().maxCoeff());
    if (mu_spread <= mu_tol) {
        const bool redundant = std::fabs(est.mu_rs - mu_mean) <= mu_tol;
        throw Error(ErrorKind::SingularSystem,
                    redundant
                        ? "all security means equal the target: the return constraint is "
                          "redundant and the weights are underdetermined"
                        : "all security means are equal but differ from the target: the "
                          "constraints are infeasible");
    }

    const HessianCheck hessian = check_hessian(est);
    if (!hessian.positive_definite) {
        throw Error(ErrorKind::DegenerateCovariance,
                    "objective Hessian 2*sigma is not positive definite (smallest pivot " +
                        std::to_string(hessian.smallest_pivot) + ")");
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.A);
    const double pivot_tol = 1e-12 * sys.A.cwiseAbs().maxCoeff();
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (min_pivot < pivot_tol) {
        throw Error(ErrorKind::SingularSystem,
                    "pivot " + std::to_string(min_pivot) + " below tolerance " +
                        std::to_string(pivot_tol));
    }

    Eigen::VectorXd x = lu.solve(sys.b);
    x += lu.solve(sys.b - sys.A * x); // one refinement step

    const double residual = (sys.A * x - sys.b).cwiseAbs().maxCoeff();
    const double residual_tol = 1e-9 * std::max(1.0, sys.b.cwiseAbs().maxCoeff());
    if (!x.allFinite() || residual > residual_tol) {
        throw Error(ErrorKind::ResidualTooLarge,
                    "solve residual " + std::to_string(residual) + " exceeds " +
                        std::to_string(residual_tol));
    }

    OptimalPortfolio result;
    result.weights = x.head(n);
    result.lambda1 = x[n];
    result.lambda2 = x[n + 1];
    result.in_sample_mean = result.weights.dot(est.mu);
    result.in_sample_variance = result.weights.dot(est.sigma * result.weights);
    result.condition_estimate = lu.rcond();
    result.residual_inf_norm = residual;
    result.hessian_pd = hessian.positive_definite;

    // Constraints re-verified against the estimates themselves.
    const double budget_gap = std::fabs(result.weights.sum() - 1.0);
    const double return_gap = std::fabs(result.in_sample_mean - est.mu_rs);
    if (budget_gap > 1e-10 || return_gap > 1e-10) {
        throw Error(ErrorKind::ResidualTooLarge,
                    "constraint verification failed: |sum w - 1| = " + std::to_string(budget_gap) +
                        ", |w'mu - mu_rs| = " + std::to_string(return_gap));
    }
    return result;
}

ReturnSeries portfolio_returns(const Eigen::VectorXd& weights, const AlignedPanel& panel) {
    if (weights.size() != panel.securities()) {
        throw Error(ErrorKind::LengthMismatch,
                    "got " + std::to_string(weights.size()) + " weights for " +
                        std::to_string(panel.securities()) + " securities");
    }
    ReturnSeries series;
    series.label = "portfolio";
    series.periods = panel.period_keys;
    series.values = panel.accepted * weights;
    return series;
}

} // namespace refopt
