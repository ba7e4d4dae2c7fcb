#include "refopt/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "refopt/cholesky.hpp"
#include "refopt/errors.hpp"

namespace refopt {

double NormalSampler::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NormalSampler::operator()() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

namespace {

void validate_spec(const MarketSpec& spec) {
    const Eigen::Index n = spec.securities();
    if (n < 2) throw std::invalid_argument("market spec needs at least 2 securities");
    if (spec.sigma.rows() != n || spec.sigma.cols() != n) {
        throw std::invalid_argument("sigma must be N x N");
    }
    if (spec.corr_rs.size() != n) throw std::invalid_argument("corr_rs must have length N");
    if ((spec.corr_rs.array().abs() > 1.0).any()) {
        throw std::invalid_argument("correlations must lie in [-1, 1]");
    }
    if (spec.var_rs < 0.0) throw std::invalid_argument("var_rs must be >= 0");
    if (spec.periods < 3) throw std::invalid_argument("need at least 3 periods");
    if (!spec.labels.empty() && static_cast<Eigen::Index>(spec.labels.size()) != n) {
        throw std::invalid_argument("labels must be empty or have length N");
    }
}

} // namespace

Eigen::MatrixXd joint_covariance(const MarketSpec& spec) {
    const Eigen::Index n = spec.securities();
    Eigen::MatrixXd joint(n + 1, n + 1);
    joint(0, 0) = spec.var_rs;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double cov = spec.corr_rs[i] * std::sqrt(spec.var_rs * spec.sigma(i, i));
        joint(0, i + 1) = cov;
        joint(i + 1, 0) = cov;
    }
    joint.bottomRightCorner(n, n) = spec.sigma;
    return joint;
}

AlignedPanel generate_panel(const MarketSpec& spec) {
    validate_spec(spec);
    const Eigen::Index n = spec.securities();

    const Eigen::MatrixXd factor = cholesky(joint_covariance(spec)); // throws NotPositiveDefinite

    Eigen::VectorXd mean(n + 1);
    mean[0] = spec.mu_rs;
    mean.tail(n) = spec.mu;

    NormalSampler normal(spec.seed);
    AlignedPanel panel;
    panel.reference.resize(spec.periods);
    panel.accepted.resize(spec.periods, n);
    panel.period_keys.reserve(static_cast<std::size_t>(spec.periods));

    Eigen::VectorXd z(n + 1);
    char key[24];
    for (Eigen::Index t = 0; t < spec.periods; ++t) {
        for (Eigen::Index k = 0; k < n + 1; ++k) z[k] = normal();
        const Eigen::VectorXd draw = mean + factor * z;
        panel.reference[t] = draw[0];
        panel.accepted.row(t) = draw.tail(n).transpose();
        std::snprintf(key, sizeof(key), "t%08lld", static_cast<long long>(t + 1));
        panel.period_keys.emplace_back(key);
    }

    if (spec.labels.empty()) {
        for (Eigen::Index i = 0; i < n; ++i) panel.labels.push_back("sec" + std::to_string(i + 1));
    } else {
        panel.labels = spec.labels;
    }
    return panel;
}

} // namespace refopt
