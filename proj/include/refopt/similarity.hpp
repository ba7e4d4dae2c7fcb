#pragma once

#include <optional>

#include "refopt/series.hpp"

namespace refopt {

struct TestResult {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    bool reject = false;
    double alpha = 0.05;
};

/// Outcome of the Sharpe-ratio test on the difference series. When the
/// differences have zero standard deviation the test is undefined; that case
/// is reported as the exceptional-degenerate marker, with all_zero set when
/// the portfolio replicates the reference exactly.
struct SharpeDiffOutcome {
    bool degenerate = false;
    bool all_zero = false;
    double sharpe_ratio = 0.0; // meaningful iff !degenerate
    std::optional<TestResult> test;
};

struct SimilarityReport {
    double s_value = 0.0;
    TestResult mean_test;
    SharpeDiffOutcome sharpe_test;
    Eigen::Index sample_size = 0;
};

/// Average squared deviation of the series from mu_rs, divisor T.
double compute_s(const ReturnSeries& series, double mu_rs);

/// One-sample two-sided t test of mean(series) against the scalar target.
TestResult t_test_mean(const ReturnSeries& series, double mu_rs, double alpha = 0.05);

/// Two-sided t test of the Sharpe ratio of reference - portfolio against 0.
/// The statistic is SR * sqrt(T) with df = T - 1; the interval covers SR.
SharpeDiffOutcome sharpe_diff_test(const ReturnSeries& reference, const ReturnSeries& portfolio,
                                   double alpha = 0.05);

/// S, the mean test, and the Sharpe test on one evaluation window.
SimilarityReport evaluate_similarity(const ReturnSeries& reference, const ReturnSeries& portfolio,
                                     double mu_rs, double alpha = 0.05);

} // namespace refopt
