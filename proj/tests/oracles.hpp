// Independent reference computations for the test suites. Everything here is
// deliberately written against plain loops and its own dense solver so that a
// defect in the library cannot hide in its own oracle.
#pragma once

#include <Eigen/Core>
#include <vector>

#include "refopt/series.hpp"

namespace oracle {

// Sample covariance via an explicit (i, j, t) triple loop, T-1 divisor.
Eigen::MatrixXd brute_force_covariance(const Eigen::MatrixXd& returns);

// Gaussian elimination with partial pivoting on plain vectors.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b);

// Closed-form equality-constrained minimum-variance solution through the
// scalars a = 1' S^-1 1, b = 1' S^-1 mu, c = mu' S^-1 mu.
struct TwoFundSolution {
    Eigen::VectorXd weights;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};
TwoFundSolution two_fund_solution(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma,
                                  double mu_rs);

// Student-t density and its adaptive-Simpson integral.
double t_pdf(double x, double df);
double t_cdf_quadrature(double x, double df, double tol = 1e-12);

double normal_cdf(double x);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd m);

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0; // sample sd, T-1 divisor
};
MeanSd two_pass_mean_sd(const Eigen::VectorXd& values);

// Euclidean projection onto {w : mu'w = mu_rs, 1'w = 1}.
Eigen::VectorXd project_to_constraints(const Eigen::VectorXd& w, const Eigen::VectorXd& mu,
                                       double mu_rs);

// Test fixture helper.
refopt::ReturnSeries make_series(const std::string& label, const std::vector<double>& values);

} // namespace oracle
