#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace refopt {

/// One-period returns of a single instrument, indexed by opaque period keys.
/// Keys are strictly increasing strings; values are dimensionless fractions.
struct ReturnSeries {
    std::string label;
    std::vector<std::string> periods;
    Eigen::VectorXd values;

    Eigen::Index size() const { return values.size(); }
};

/// Reference and accepted returns on a common, strictly increasing period grid.
/// accepted is T x N, column i holding the returns of labels[i].
struct AlignedPanel {
    std::vector<std::string> period_keys;
    Eigen::VectorXd reference;
    Eigen::MatrixXd accepted;
    std::vector<std::string> labels;

    Eigen::Index periods() const { return accepted.rows(); }
    Eigen::Index securities() const { return accepted.cols(); }
};

} // namespace refopt
