#pragma once

#include <Eigen/Core>

#include "refopt/series.hpp"

namespace refopt {

/// Sample moments of an aligned panel. mu_rs is already net of the
/// monitoring cost, and the confidence interval is shifted with it.
struct MomentEstimates {
    Eigen::VectorXd mu;      // per-period mean return of each accepted security
    Eigen::MatrixXd sigma;   // sample covariance, T-1 divisor, exactly symmetric
    double mu_rs = 0.0;      // reference mean minus monitoring cost
    double var_rs = 0.0;     // reference variance, T-1 divisor
    double mu_rs_ci_lo = 0.0;
    double mu_rs_ci_hi = 0.0;
    Eigen::Index sample_size = 0;
    double alpha = 0.05;
    double monitoring_cost = 0.0;

    Eigen::Index securities() const { return mu.size(); }
};

/// Sample mean vector and covariance of the accepted set, reference mean and
/// variance, and a two-sided Student-t confidence interval for the reference
/// mean at level 1 - alpha. monitoring_cost is deducted from the reference
/// mean (and the interval moves with it).
MomentEstimates estimate_moments(const AlignedPanel& panel, double alpha = 0.05,
                                 double monitoring_cost = 0.0);

} // namespace refopt
