#include "ellcov/variance.hpp"

#include "ellcov/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ellcov {

namespace {

void check_symmetric(const Eigen::MatrixXd& s, const char* name) {
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument(std::string(name) + " is not symmetric");
  }
}

double square(double x) { return x * x; }

}  // namespace

void PopulationPair::validate() const {
  if (sigma1.rows() != sigma1.cols() || sigma2.rows() != sigma2.cols() ||
      sigma1.rows() != sigma2.rows()) {
    throw DimensionMismatch("PopulationPair", sigma1.rows(), sigma1.cols(), sigma2.rows(),
                            sigma2.cols());
  }
  if (sigma1.rows() < 1) throw std::invalid_argument("PopulationPair: empty covariance");
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("PopulationPair: sample sizes must be >= 1");
  check_symmetric(sigma1, "sigma1");
  check_symmetric(sigma2, "sigma2");
}

double trace_of_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionMismatch("trace_of_product", a.rows(), a.cols(), b.rows(), b.cols());
  }
  return a.cwiseProduct(b.transpose()).sum();
}

Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& sigma) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
  if (eig.info() != Eigen::Success) throw std::domain_error("eigendecomposition failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double norm = lambda.cwiseAbs().maxCoeff();
  if (lambda.minCoeff() < -1e-8 * norm) {
    throw std::domain_error("covariance is not positive semidefinite (smallest eigenvalue " +
                            std::to_string(lambda.minCoeff()) + ")");
  }
  const Eigen::VectorXd root = lambda.cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
}

namespace {

// Shared part of sigma_n^2 and gamma_n^2.
VarianceComponents common_components(const PopulationPair& pop, const RadialMoments& mom) {
  pop.validate();
  const Eigen::MatrixXd diff = pop.sigma1 - pop.sigma2;
  const double p = static_cast<double>(pop.sigma1.rows());
  const Eigen::MatrixXd* sig[2] = {&pop.sigma1, &pop.sigma2};
  const double n[2] = {static_cast<double>(pop.n1), static_cast<double>(pop.n2)};
  const double tau[2] = {mom.tau1, mom.tau2};

  VarianceComponents c;
  for (int i = 0; i < 2; ++i) {
    const Eigen::MatrixXd m = (*sig[i]) * diff;
    c.spectral[i] = 4.0 / (n[i] * n[i]) * square(trace_of_product(*sig[i], *sig[i]));
    c.difference[i] = 8.0 / n[i] * trace_of_product(m, m);
    c.radial[i] = 4.0 * (tau[i] - 2.0) / (p * n[i]) * square(m.trace());
  }
  c.cross = 8.0 / (n[0] * n[1]) * square(trace_of_product(pop.sigma1, pop.sigma2));
  return c;
}

double sum_sigma(const VarianceComponents& c) {
  double s = c.cross;
  for (int i = 0; i < 2; ++i) s += c.spectral[i] + c.difference[i] + c.radial[i];
  return s;
}

double sum_gamma(const VarianceComponents& c) {
  double s = c.cross;
  for (int i = 0; i < 2; ++i) s += c.spectral[i] + c.difference[i] + c.hadamard[i];
  return s;
}

void add_hadamard(const PopulationPair& pop, const RadialMoments& mom, VarianceComponents& c) {
  const Eigen::MatrixXd diff = pop.sigma1 - pop.sigma2;
  const Eigen::MatrixXd* sig[2] = {&pop.sigma1, &pop.sigma2};
  const double n[2] = {static_cast<double>(pop.n1), static_cast<double>(pop.n2)};
  const double nu3[2] = {mom.nu3_1, mom.nu3_2};
  for (int i = 0; i < 2; ++i) {
    const Eigen::MatrixXd root = symmetric_sqrt(*sig[i]);
    const Eigen::MatrixXd k = root * diff * root;
    // tr(K o K) is the sum of squared diagonal entries of K.
    c.hadamard[i] = 4.0 * (nu3[i] - 3.0) / n[i] * k.diagonal().squaredNorm();
  }
}

}  // namespace

double sigma_n_squared(const PopulationPair& pop, const RadialMoments& mom) {
  return sum_sigma(common_components(pop, mom));
}

double sigma_null_squared(const PopulationPair& pop) {
  pop.validate();
  const double inv = 1.0 / static_cast<double>(pop.n1) + 1.0 / static_cast<double>(pop.n2);
  return 4.0 * inv * inv * square(trace_of_product(pop.sigma1, pop.sigma1));
}

NullScaleEstimate sigma_hat_null(double u1, double u2, Index n1, Index n2) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("sigma_hat_null: sample sizes must be >= 1");
  return NullScaleEstimate{2.0 * u1 / static_cast<double>(n1) +
                           2.0 * u2 / static_cast<double>(n2)};
}

double gamma_n_squared(const PopulationPair& pop, const RadialMoments& mom) {
  VarianceComponents c = common_components(pop, mom);
  add_hadamard(pop, mom, c);
  return sum_gamma(c);
}

VarianceReport variance_report(const PopulationPair& pop, const RadialMoments& mom) {
  VarianceReport r;
  r.components = common_components(pop, mom);
  add_hadamard(pop, mom, r.components);
  r.sigma_sq = sum_sigma(r.components);
  r.gamma_sq = sum_gamma(r.components);
  r.sigma0_sq = sigma_null_squared(pop);
  return r;
}

double radial_tau(const RadialLaw& law) {
  const double p = static_cast<double>(law.p);
  switch (law.tag) {
    case RadialTag::ChiSq: return 2.0;        // Var = 2p
    case RadialTag::BetaPrime: return 3.0;    // a (a + b - 1) / ((b - 1)^2 (b - 2)) = 3p
    case RadialTag::ScaledBeta: return 4.0 / (p / 2.0 + 3.0);
    case RadialTag::GammaLaw: return 5.0;     // shape / rate^2 = (p / 5) 25
    case RadialTag::ScaledGammaSq: return (4.0 * p + 6.0) / (p + 1.0);
    case RadialTag::FixedRadius: return 0.0;
  }
  throw std::invalid_argument("radial_tau: unsupported radial law");
}

double assumption_a3_ratio(const PopulationPair& pop) {
  pop.validate();
  const Eigen::MatrixXd* sig[2] = {&pop.sigma1, &pop.sigma2};
  Eigen::MatrixXd prod[2][2];
  double tr[2][2];
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      prod[i][j] = (*sig[i]) * (*sig[j]);
      tr[i][j] = prod[i][j].trace();
    }
  }
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const double den = tr[i][j] * tr[k][l];
          if (den == 0.0) throw std::domain_error("assumption_a3_ratio: zero trace denominator");
          best = std::max(best, trace_of_product(prod[i][j], prod[k][l]) / den);
        }
  return best;
}

}  // namespace ellcov
