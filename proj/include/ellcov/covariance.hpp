#pragma once

#include "ellcov/data_matrix.hpp"
#include "ellcov/rng.hpp"

#include <Eigen/Dense>

#include <string_view>

namespace ellcov::sim {

enum class CovarianceCase {
  BulkTwoLevel,  ///< (a) Q diag(2 x p/2, 1 x p/2) Q^T, p even
  Toeplitz,      ///< (b) rho^|i-j|
  Spiked,        ///< (c) Q diag(5, 4, 3, 1, ..., 1) Q^T
  Identity,      ///< I_p
};

inline constexpr double kDefaultToeplitzRho = 0.3;

/// Sigma = scale * base + B(delta), where B(delta) is the banded perturbation
/// delta^2 on the diagonal and delta on the first off-diagonals.
struct CovarianceSpec {
  CovarianceCase tag = CovarianceCase::BulkTwoLevel;
  Index p = 1;
  double rho = kDefaultToeplitzRho;
  double delta = 0.0;
  double scale = 1.0;
};

/// Realized covariance and a factor with factor * factor^T = sigma.
struct CovarianceFactor {
  Eigen::MatrixXd sigma;
  Eigen::MatrixXd factor;
};

std::string_view covariance_name(CovarianceCase c);
/// Accepts canonical names and the letters "a", "b", "c".
CovarianceCase parse_covariance_case(std::string_view text);

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the signs of R's
/// diagonal folded into Q.
Eigen::MatrixXd haar_orthogonal(Index p, Rng& rng);

Eigen::MatrixXd banded_perturbation(Index p, double delta);

/// Unperturbed base matrix for a case. Draws the random orthogonal factor from rng for
/// cases (a) and (c).
Eigen::MatrixXd base_covariance(CovarianceCase c, Index p, double rho, Rng& rng);

/// Cholesky factor, falling back to a clamped symmetric root when Cholesky fails.
/// Throws std::domain_error when the smallest eigenvalue is below -1e-8 ||S||_2.
Eigen::MatrixXd covariance_factor(const Eigen::MatrixXd& sigma);

CovarianceFactor build_covariance(const CovarianceSpec& spec, Rng& rng);

}  // namespace ellcov::sim
