#include "oracles.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace oracle {

Eigen::MatrixXd brute_force_covariance(const Eigen::MatrixXd& returns) {
    const Eigen::Index t_count = returns.rows();
    const Eigen::Index n = returns.cols();

    std::vector<double> means(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        double sum = 0.0;
        for (Eigen::Index t = 0; t < t_count; ++t) sum += returns(t, i);
        means[static_cast<std::size_t>(i)] = sum / static_cast<double>(t_count);
    }

    Eigen::MatrixXd cov(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            double sum = 0.0;
            for (Eigen::Index t = 0; t < t_count; ++t) {
                sum += (returns(t, i) - means[static_cast<std::size_t>(i)]) *
                       (returns(t, j) - means[static_cast<std::size_t>(j)]);
            }
            cov(i, j) = sum / static_cast<double>(t_count - 1);
        }
    }
    return cov;
}

std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
        }
        if (std::fabs(a[pivot][col]) < 1e-300) throw std::runtime_error("oracle solve: singular");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double factor = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
            b[row] -= factor * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t row = n; row-- > 0;) {
        double sum = b[row];
        for (std::size_t k = row + 1; k < n; ++k) sum -= a[row][k] * x[k];
        x[row] = sum / a[row][row];
    }
    return x;
}

TwoFundSolution two_fund_solution(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma,
                                  double mu_rs) {
    const std::size_t n = static_cast<std::size_t>(mu.size());
    std::vector<std::vector<double>> s(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            s[i][j] = sigma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }

    std::vector<double> mu_vec(n, 0.0);
    std::vector<double> ones(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) mu_vec[i] = mu[static_cast<Eigen::Index>(i)];

    const std::vector<double> sinv_mu = solve_dense(s, mu_vec);
    const std::vector<double> sinv_one = solve_dense(s, ones);

    double a = 0.0, b = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        a += sinv_one[i];
        b += sinv_mu[i]; // = 1' S^-1 mu = mu' S^-1 1
        c += mu_vec[i] * sinv_mu[i];
    }

    // [c b; b a] (l1, l2)' = (2 mu_rs, 2)'
    const double det = c * a - b * b;
    if (std::fabs(det) < 1e-300) throw std::runtime_error("oracle two-fund: degenerate scalars");
    const double lambda1 = 2.0 * (a * mu_rs - b) / det;
    const double lambda2 = 2.0 * (c - b * mu_rs) / det;

    TwoFundSolution solution;
    solution.lambda1 = lambda1;
    solution.lambda2 = lambda2;
    solution.weights.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        solution.weights[static_cast<Eigen::Index>(i)] =
            0.5 * (lambda1 * sinv_mu[i] + lambda2 * sinv_one[i]);
    }
    return solution;
}

double t_pdf(double x, double df) {
    return std::exp(std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                    0.5 * std::log(df * M_PI) -
                    0.5 * (df + 1.0) * std::log1p(x * x / df));
}

namespace {

double simpson(double f_lo, double f_mid, double f_hi, double lo, double hi) {
    return (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
}

double adaptive_simpson(double df, double lo, double hi, double f_lo, double f_mid, double f_hi,
                        double whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double f_lmid = t_pdf(lmid, df);
    const double f_rmid = t_pdf(rmid, df);
    const double left = simpson(f_lo, f_lmid, f_mid, lo, mid);
    const double right = simpson(f_mid, f_rmid, f_hi, mid, hi);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(df, lo, mid, f_lo, f_lmid, f_mid, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(df, mid, hi, f_mid, f_rmid, f_hi, right, 0.5 * tol, depth - 1);
}

} // namespace

double t_cdf_quadrature(double x, double df, double tol) {
    if (x == 0.0) return 0.5;
    const double hi = std::fabs(x);
    const double f_lo = t_pdf(0.0, df);
    const double f_hi = t_pdf(hi, df);
    const double f_mid = t_pdf(0.5 * hi, df);
    const double whole = simpson(f_lo, f_mid, f_hi, 0.0, hi);
    const double integral = adaptive_simpson(df, 0.0, hi, f_lo, f_mid, f_hi, whole, tol, 60);
    return x > 0.0 ? 0.5 + integral : 0.5 - integral;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd m) {
    const Eigen::Index n = m.rows();
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
        }
        if (std::sqrt(off) < 1e-15 * scale) break;

        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (m(p, q) == 0.0) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double mkp = m(k, p);
                    const double mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double mpk = m(p, k);
                    const double mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
            }
        }
    }
    std::vector<double> eigenvalues(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) eigenvalues[static_cast<std::size_t>(i)] = m(i, i);
    return eigenvalues;
}

MeanSd two_pass_mean_sd(const Eigen::VectorXd& values) {
    const Eigen::Index n = values.size();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) sum += values[i];
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) ss += (values[i] - mean) * (values[i] - mean);
    return {mean, std::sqrt(ss / static_cast<double>(n - 1))};
}

Eigen::VectorXd project_to_constraints(const Eigen::VectorXd& w, const Eigen::VectorXd& mu,
                                       double mu_rs) {
    const double n = static_cast<double>(w.size());
    // C = [mu'; 1'], gram = C C', residual r = C w - d.
    const double g11 = mu.squaredNorm();
    const double g12 = mu.sum();
    const double g22 = n;
    const double det = g11 * g22 - g12 * g12;
    const double r1 = mu.dot(w) - mu_rs;
    const double r2 = w.sum() - 1.0;
    const double y1 = (g22 * r1 - g12 * r2) / det;
    const double y2 = (g11 * r2 - g12 * r1) / det;
    return w - (mu * y1 + Eigen::VectorXd::Ones(w.size()) * y2);
}

refopt::ReturnSeries make_series(const std::string& label, const std::vector<double>& values) {
    refopt::ReturnSeries series;
    series.label = label;
    series.values.resize(static_cast<Eigen::Index>(values.size()));
    char key[24];
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::snprintf(key, sizeof(key), "t%08zu", i + 1);
        series.periods.emplace_back(key);
        series.values[static_cast<Eigen::Index>(i)] = values[i];
    }
    return series;
}

} // namespace oracle
