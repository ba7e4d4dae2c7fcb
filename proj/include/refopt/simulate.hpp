#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "refopt/series.hpp"

namespace refopt {

/// True joint moments of the reference and the accepted set. The reference's
/// covariance with security i is corr_rs[i] * sqrt(var_rs * sigma(i,i)); the
/// assembled (N+1)x(N+1) joint matrix must be positive definite.
struct MarketSpec {
    Eigen::VectorXd mu;
    Eigen::MatrixXd sigma;
    double mu_rs = 0.0;
    double var_rs = 0.0;
    Eigen::VectorXd corr_rs;
    std::vector<std::string> labels; // optional; defaults to sec1..secN
    Eigen::Index periods = 0;
    std::uint64_t seed = 0;

    Eigen::Index securities() const { return mu.size(); }
};

/// Standard normal draws from a seeded mt19937_64 via the Marsaglia polar
/// method; uniforms use the high 53 bits of the engine output. The sequence
/// is fully determined by the seed on every platform.
class NormalSampler {
  public:
    explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

    double operator()();

  private:
    double uniform(); // in [0, 1)

    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Joint covariance of (reference, securities 1..N) in that order.
Eigen::MatrixXd joint_covariance(const MarketSpec& spec);

/// T joint draws mean + L z with L the Cholesky factor of the joint
/// covariance. Period keys are zero-padded so string order matches time
/// order. Identical spec and seed give an identical panel.
AlignedPanel generate_panel(const MarketSpec& spec);

} // namespace refopt
