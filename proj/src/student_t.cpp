#include "refopt/student_t.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace refopt {

namespace {

// Continued fraction for the incomplete beta function, modified Lentz scheme.
// Converges quickly for x < (a+1)/(a+b+2); the caller switches tails.
double beta_continued_fraction(double x, double a, double b) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-15;
    constexpr int max_iter = 500;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;

    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;

    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;

        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) return h;
    }
    throw std::runtime_error("incomplete beta continued fraction did not converge");
}

} // namespace

double regularized_incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;

    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(x, a, b) / a;
    }
    return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double t_cdf(double x, int df) {
    if (df < 1) throw std::invalid_argument("degrees of freedom must be >= 1");
    if (x == 0.0) return 0.5;

    const double v = static_cast<double>(df);
    const double tail = regularized_incomplete_beta(v / (v + x * x), 0.5 * v, 0.5);
    return x > 0.0 ? 1.0 - 0.5 * tail : 0.5 * tail;
}

double t_quantile(double p, int df) {
    if (df < 1) throw std::invalid_argument("degrees of freedom must be >= 1");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0, 1)");
    if (p == 0.5) return 0.0;

    // Symmetric, so bisect on the upper half only.
    const bool upper = p > 0.5;
    const double target = upper ? p : 1.0 - p;

    double lo = 0.0;
    double hi = 1.0;
    while (t_cdf(hi, df) < target) {
        hi *= 2.0;
        if (hi > 1e300) return upper ? std::numeric_limits<double>::infinity()
                                     : -std::numeric_limits<double>::infinity();
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (t_cdf(mid, df) < target ? lo : hi) = mid;
    }
    const double q = 0.5 * (lo + hi);
    return upper ? q : -q;
}

} // namespace refopt
