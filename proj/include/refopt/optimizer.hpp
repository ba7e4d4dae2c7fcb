#pragma once

#include <Eigen/Core>

#include "refopt/estimation.hpp"
#include "refopt/series.hpp"

namespace refopt {

/// First-order conditions of the constrained minimum-variance problem as a
/// bordered linear system A x = b of size (N+2):
///   rows 0..N-1:  2 sigma(i,j) w_j - mu_i lambda1 - lambda2 = 0
///   row  N:       mu^T w = mu_rs
///   row  N+1:     1^T w  = 1
/// The solution vector is (w_1..w_N, lambda1, lambda2).
struct LinearSystem {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    Eigen::Index securities = 0;
};

struct HessianCheck {
    bool positive_definite = false;
    double smallest_pivot = 0.0;
};

struct OptimalPortfolio {
    Eigen::VectorXd weights;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double in_sample_mean = 0.0;     // w^T mu
    double in_sample_variance = 0.0; // w^T sigma w
    double condition_estimate = 0.0; // reciprocal condition proxy of A
    double residual_inf_norm = 0.0;  // ||A x - b||_inf after refinement
    bool hessian_pd = false;
};

LinearSystem build_linear_system(const MomentEstimates& est);

/// Cholesky pivots of the objective Hessian H = 2 sigma; positive definite
/// iff every pivot clears 1e-10 * max(diag H).
HessianCheck check_hessian(const MomentEstimates& est);

/// Solves the bordered system by LU with partial pivoting plus one step of
/// iterative refinement, then re-verifies both constraints against est.
/// Throws SingularSystem when mu is proportional to the ones vector or a
/// pivot falls below 1e-12 * max|A|, DegenerateCovariance when the Hessian
/// check fails, and ResidualTooLarge when the verified solution is off.
OptimalPortfolio solve_optimal_weights(const LinearSystem& sys, const MomentEstimates& est);

/// Per-period portfolio returns: value at t is sum_i weights[i] * accepted(t, i).
ReturnSeries portfolio_returns(const Eigen::VectorXd& weights, const AlignedPanel& panel);

} // namespace refopt
