#pragma once

namespace refopt {

/// Cumulative probability of the Student's t distribution with df degrees of
/// freedom, evaluated through the regularized incomplete beta function
/// I_{df/(df+x^2)}(df/2, 1/2). Absolute error below 1e-12 for df >= 1.
double t_cdf(double x, int df);

/// Inverse of t_cdf in x for fixed df; p must lie in (0, 1).
double t_quantile(double p, int df);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double x, double a, double b);

} // namespace refopt
