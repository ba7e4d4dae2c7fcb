#pragma once

#include <Eigen/Core>

namespace refopt {

struct CholeskyOutcome {
    bool positive_definite = false;
    Eigen::MatrixXd factor;   // lower triangular L with L L^T = m, valid iff positive_definite
    double smallest_pivot = 0.0; // min over j of m(j,j) - sum_k L(j,k)^2, before sqrt
};

/// Factors a symmetric matrix, declaring failure as soon as a pivot falls at
/// or below 1e-10 * max(diagonal). smallest_pivot is recorded either way.
CholeskyOutcome try_cholesky(const Eigen::MatrixXd& m);

/// As try_cholesky, but throws Error(NotPositiveDefinite) on failure.
Eigen::MatrixXd cholesky(const Eigen::MatrixXd& m);

} // namespace refopt
