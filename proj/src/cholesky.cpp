#include "refopt/cholesky.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "refopt/errors.hpp"

namespace refopt {

CholeskyOutcome try_cholesky(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
    const Eigen::Index n = m.rows();

    const double tolerance = 1e-10 * std::max(0.0, m.diagonal().maxCoeff());

    CholeskyOutcome out;
    out.factor = Eigen::MatrixXd::Zero(n, n);
    out.smallest_pivot = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd& L = out.factor;

    for (Eigen::Index j = 0; j < n; ++j) {
        const double pivot = m(j, j) - L.row(j).head(j).squaredNorm();
        out.smallest_pivot = std::min(out.smallest_pivot, pivot);
        if (pivot <= tolerance) {
            out.positive_definite = false;
            return out;
        }
        L(j, j) = std::sqrt(pivot);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            L(i, j) = (m(i, j) - L.row(i).head(j).dot(L.row(j).head(j))) / L(j, j);
        }
    }
    out.positive_definite = true;
    return out;
}

Eigen::MatrixXd cholesky(const Eigen::MatrixXd& m) {
    CholeskyOutcome out = try_cholesky(m);
    if (!out.positive_definite) {
        throw Error(ErrorKind::NotPositiveDefinite,
                    "matrix is not positive definite (smallest pivot " +
                        std::to_string(out.smallest_pivot) + ")");
    }
    return std::move(out.factor);
}

} // namespace refopt
