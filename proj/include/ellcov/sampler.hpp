#pragma once

#include "ellcov/data_matrix.hpp"
#include "ellcov/radial_law.hpp"
#include "ellcov/rng.hpp"

#include <Eigen/Dense>

namespace ellcov::sim {

/// One draw of xi^2.
double sample_radial_squared(const RadialLaw& law, Rng& rng);

/// One draw of xi = sqrt(xi^2).
double sample_radial(const RadialLaw& law, Rng& rng);

/// Uniform point on the unit sphere in R^p.
Eigen::VectorXd sample_sphere(Index p, Rng& rng);

/// x = xi * factor * u + mean, with factor * factor^T the covariance.
struct EllipticalSpec {
  RadialLaw radial;
  Eigen::MatrixXd factor;
  Eigen::VectorXd mean;  ///< empty means zero
  Index n = 0;
};

DataMatrix sample_elliptical(const EllipticalSpec& spec, Rng& rng);

}  // namespace ellcov::sim
