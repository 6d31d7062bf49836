#pragma once

#include "ellcov/radial_law.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace ellcov::sim {

struct MomentCheck {
  std::string name;
  double expected = 0.0;
  double estimate = 0.0;
  double standard_error = 0.0;
  double tolerance_se = 3.0;

  bool pass() const;
};

struct MomentSuiteOptions {
  Eigen::MatrixXd sigma;  ///< empty means the 5 x 5 Toeplitz(0.5) matrix
  RadialTag radial = RadialTag::ChiSq;
  Index replicates = 100000;
  std::uint64_t seed = 20240601;
};

/// Monte Carlo check of the mixed-moment identities for bilinear forms in independent
/// centered elliptical vectors x, x1..x4 with covariance S and kappa = E xi^4 / (p (p + 2)):
///   (a) Var(x^T S x) = kappa (tr^2 S^2 + 2 tr S^4) - tr^2 S^2
///   (b) E[(x1^T x2 x2^T x3)^2] = kappa (tr^2 S^2 + 2 tr S^4)
///   (c) E[(x1^T x2)^2] = tr S^2
///   (d) E[(x1^T x2 x3^T x4)^2] = tr^2 S^2
///   (e) E[(x1^T x2)^4] = 3 kappa^2 (tr^2 S^2 + 2 tr S^4)
std::vector<MomentCheck> moment_identity_suite(const MomentSuiteOptions& options);

}  // namespace ellcov::sim
