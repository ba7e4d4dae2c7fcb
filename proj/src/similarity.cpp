#include "refopt/similarity.hpp"

#include <cmath>
#include <stdexcept>

#include "refopt/errors.hpp"
#include "refopt/student_t.hpp"

namespace refopt {

namespace {

double sample_sd(const Eigen::VectorXd& values) {
    const double mean = values.mean();
    const double ss = (values.array() - mean).square().sum();
    return std::sqrt(ss / (static_cast<double>(values.size()) - 1.0));
}

TestResult two_sided_t(double statistic, int df, double alpha) {
    TestResult r;
    r.statistic = statistic;
    r.df = df;
    r.alpha = alpha;
    r.p_value = 2.0 * (1.0 - t_cdf(std::fabs(statistic), df));
    r.reject = r.p_value < alpha;
    return r;
}

} // namespace

double compute_s(const ReturnSeries& series, double mu_rs) {
    if (series.size() < 1) throw Error(ErrorKind::EmptySeries, "cannot compute S of an empty series");
    return (series.values.array() - mu_rs).square().sum() /
           static_cast<double>(series.size());
}

TestResult t_test_mean(const ReturnSeries& series, double mu_rs, double alpha) {
    const Eigen::Index t_count = series.size();
    if (t_count < 3) throw std::invalid_argument("t test needs at least 3 observations");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");

    const double mean = series.values.mean();
    const double sd = sample_sd(series.values);
    if (sd == 0.0) {
        throw Error(ErrorKind::ZeroVariance,
                    "series '" + series.label + "' is constant, t statistic undefined");
    }

    const double root_t = std::sqrt(static_cast<double>(t_count));
    const double se = sd / root_t;
    TestResult r = two_sided_t((mean - mu_rs) / se, static_cast<int>(t_count) - 1, alpha);
    const double half_width = t_quantile(1.0 - alpha / 2.0, r.df) * se;
    r.ci_lo = mean - half_width;
    r.ci_hi = mean + half_width;
    return r;
}

SharpeDiffOutcome sharpe_diff_test(const ReturnSeries& reference, const ReturnSeries& portfolio,
                                   double alpha) {
    if (reference.size() != portfolio.size()) {
        throw Error(ErrorKind::LengthMismatch, "difference series needs equal-length inputs");
    }
    const Eigen::Index t_count = reference.size();
    if (t_count < 3) throw std::invalid_argument("Sharpe test needs at least 3 observations");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");

    ReturnSeries diff;
    diff.label = "difference";
    diff.periods = reference.periods;
    diff.values = reference.values - portfolio.values;

    const double mean = diff.values.mean();
    const double sd = sample_sd(diff.values);

    SharpeDiffOutcome out;
    if (sd == 0.0) {
        out.degenerate = true;
        out.all_zero = (diff.values.array() == 0.0).all();
        return out;
    }

    const double root_t = std::sqrt(static_cast<double>(t_count));
    out.sharpe_ratio = mean / sd;
    TestResult r = two_sided_t(out.sharpe_ratio * root_t, static_cast<int>(t_count) - 1, alpha);
    const double half_width = t_quantile(1.0 - alpha / 2.0, r.df) / root_t;
    r.ci_lo = out.sharpe_ratio - half_width;
    r.ci_hi = out.sharpe_ratio + half_width;
    out.test = r;
    return out;
}

SimilarityReport evaluate_similarity(const ReturnSeries& reference, const ReturnSeries& portfolio,
                                     double mu_rs, double alpha) {
    SimilarityReport report;
    report.sample_size = portfolio.size();
    report.s_value = compute_s(portfolio, mu_rs);
    report.mean_test = t_test_mean(portfolio, mu_rs, alpha);
    report.sharpe_test = sharpe_diff_test(reference, portfolio, alpha);
    return report;
}

} // namespace refopt
