#pragma once

// Asymptotic variance formulas for T = U1 + U2 - 2 V under the elliptical model
// (sigma_n^2), its null reduction, the plug-in null scale, the independent-component
// comparison variance (gamma_n^2), finite-p radial tau values and the trace-ratio
// diagnostic for the fourth-order trace condition.

#include "ellcov/data_matrix.hpp"
#include "ellcov/radial_law.hpp"

#include <Eigen/Dense>

namespace ellcov {

struct PopulationPair {
  Eigen::MatrixXd sigma1;
  Eigen::MatrixXd sigma2;
  Index n1 = 0;
  Index n2 = 0;

  /// Checks square, matching dimension and symmetry within 1e-10 (relative).
  void validate() const;
};

struct RadialMoments {
  double tau1 = 2.0;
  double tau2 = 2.0;
  double nu3_1 = 3.0;
  double nu3_2 = 3.0;
};

/// Named summands of sigma_n^2. Index 0 is sample 1, index 1 is sample 2.
struct VarianceComponents {
  double spectral[2] = {0.0, 0.0};    // 4 / n_i^2 tr^2(S_i^2)
  double difference[2] = {0.0, 0.0};  // 8 / n_i tr{S_i (S1 - S2)}^2
  double radial[2] = {0.0, 0.0};      // 4 (tau_i - 2) / (p n_i) tr^2(S_i (S1 - S2))
  double hadamard[2] = {0.0, 0.0};    // 4 (nu3_i - 3) / n_i tr{K_i o K_i}, gamma_n^2 only
  double cross = 0.0;                 // 8 / (n1 n2) tr^2(S1 S2)
};

struct VarianceReport {
  double sigma_sq = 0.0;
  double sigma0_sq = 0.0;  ///< evaluated with sigma1 as the common null covariance
  double gamma_sq = 0.0;
  VarianceComponents components;
};

double sigma_n_squared(const PopulationPair& pop, const RadialMoments& mom);

/// 4 (1/n1 + 1/n2)^2 tr^2(S0^2) with S0 = pop.sigma1.
double sigma_null_squared(const PopulationPair& pop);

/// Plug-in null scale 2 u1 / n1 + 2 u2 / n2. This estimates sigma_{n,0} itself (not its
/// square). A nonpositive value is returned as-is and flagged.
struct NullScaleEstimate {
  double value = 0.0;
  bool degenerate() const { return !(value > 0.0); }
};
NullScaleEstimate sigma_hat_null(double u1, double u2, Index n1, Index n2);

/// Independent-component variance. Throws std::domain_error when a covariance has an
/// eigenvalue below -1e-8 ||S||_2.
double gamma_n_squared(const PopulationPair& pop, const RadialMoments& mom);

VarianceReport variance_report(const PopulationPair& pop, const RadialMoments& mom);

/// Finite-p Var(xi^2) / p for the given law.
double radial_tau(const RadialLaw& law);

/// max over (i, j, k, l) in {1,2}^4 of tr(Si Sj Sk Sl) / (tr(Si Sj) tr(Sk Sl)).
double assumption_a3_ratio(const PopulationPair& pop);

/// Symmetric positive semidefinite square root via eigendecomposition, clamping
/// eigenvalues at zero. Throws std::domain_error below -1e-8 ||S||_2.
Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& sigma);

/// tr(A B) as a Frobenius inner product, without forming the product.
double trace_of_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace ellcov
