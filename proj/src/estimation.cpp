#include "refopt/estimation.hpp"

#include <cmath>
#include <stdexcept>

#include "refopt/student_t.hpp"

namespace refopt {

MomentEstimates estimate_moments(const AlignedPanel& panel, double alpha,
                                 double monitoring_cost) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (monitoring_cost < 0.0) throw std::invalid_argument("monitoring cost must be >= 0");

    const Eigen::Index t_count = panel.periods();
    const Eigen::Index n = panel.securities();
    const double t_real = static_cast<double>(t_count);

    MomentEstimates est;
    est.sample_size = t_count;
    est.alpha = alpha;
    est.monitoring_cost = monitoring_cost;

    est.mu = panel.accepted.colwise().mean();

    // Each unordered pair computed once, then mirrored, so sigma is symmetric
    // bit for bit.
    const Eigen::MatrixXd centered = panel.accepted.rowwise() - est.mu.transpose();
    est.sigma.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double cov = centered.col(i).dot(centered.col(j)) / (t_real - 1.0);
            est.sigma(i, j) = cov;
            est.sigma(j, i) = cov;
        }
    }

    const double ref_mean = panel.reference.mean();
    est.mu_rs = ref_mean - monitoring_cost;
    est.var_rs = (panel.reference.array() - ref_mean).square().sum() / (t_real - 1.0);

    const double quantile = t_quantile(1.0 - alpha / 2.0, static_cast<int>(t_count) - 1);
    const double half_width = quantile * std::sqrt(est.var_rs / t_real);
    est.mu_rs_ci_lo = est.mu_rs - half_width;
    est.mu_rs_ci_hi = est.mu_rs + half_width;
    return est;
}

} // namespace refopt
