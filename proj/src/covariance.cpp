#include "ellcov/covariance.hpp"

#include "ellcov/variance.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ellcov::sim {

std::string_view covariance_name(CovarianceCase c) {
  switch (c) {
    case CovarianceCase::BulkTwoLevel: return "bulk";
    case CovarianceCase::Toeplitz: return "toeplitz";
    case CovarianceCase::Spiked: return "spiked";
    case CovarianceCase::Identity: return "identity";
  }
  return "unknown";
}

CovarianceCase parse_covariance_case(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "bulk" || s == "a") return CovarianceCase::BulkTwoLevel;
  if (s == "toeplitz" || s == "b") return CovarianceCase::Toeplitz;
  if (s == "spiked" || s == "c") return CovarianceCase::Spiked;
  if (s == "identity") return CovarianceCase::Identity;
  throw std::invalid_argument("unknown covariance case '" + std::string(text) + "'");
}

Eigen::MatrixXd haar_orthogonal(Index p, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd z(p, p);
  for (Index j = 0; j < p; ++j)
    for (Index i = 0; i < p; ++i) z(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (Index j = 0; j < p; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

Eigen::MatrixXd banded_perturbation(Index p, double delta) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(p, p);
  for (Index i = 0; i < p; ++i) {
    b(i, i) = delta * delta;
    if (i + 1 < p) {
      b(i, i + 1) = delta;
      b(i + 1, i) = delta;
    }
  }
  return b;
}

namespace {

Eigen::MatrixXd rotate(const Eigen::VectorXd& eigenvalues, Rng& rng) {
  const Eigen::MatrixXd q = haar_orthogonal(eigenvalues.size(), rng);
  Eigen::MatrixXd s = q * eigenvalues.asDiagonal() * q.transpose();
  return 0.5 * (s + s.transpose());
}

}  // namespace

Eigen::MatrixXd base_covariance(CovarianceCase c, Index p, double rho, Rng& rng) {
  if (p < 1) throw std::invalid_argument("covariance dimension must be >= 1");
  switch (c) {
    case CovarianceCase::BulkTwoLevel: {
      if (p % 2 != 0) throw std::invalid_argument("two-level bulk covariance needs even p");
      Eigen::VectorXd ev(p);
      ev.head(p / 2).setConstant(2.0);
      ev.tail(p / 2).setConstant(1.0);
      return rotate(ev, rng);
    }
    case CovarianceCase::Toeplitz: {
      if (!(std::abs(rho) < 1.0)) throw std::invalid_argument("Toeplitz rho must satisfy |rho| < 1");
      Eigen::MatrixXd s(p, p);
      for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < p; ++j) s(i, j) = std::pow(rho, static_cast<double>(std::abs(i - j)));
      return s;
    }
    case CovarianceCase::Spiked: {
      if (p < 3) throw std::invalid_argument("spiked covariance needs p >= 3");
      Eigen::VectorXd ev = Eigen::VectorXd::Ones(p);
      ev(0) = 5.0;
      ev(1) = 4.0;
      ev(2) = 3.0;
      return rotate(ev, rng);
    }
    case CovarianceCase::Identity:
      return Eigen::MatrixXd::Identity(p, p);
  }
  throw std::invalid_argument("unsupported covariance case");
}

Eigen::MatrixXd covariance_factor(const Eigen::MatrixXd& sigma) {
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  // Not positive definite: a clamped symmetric root is still a valid factor for PSD input.
  return symmetric_sqrt(sigma);
}

CovarianceFactor build_covariance(const CovarianceSpec& spec, Rng& rng) {
  CovarianceFactor out;
  out.sigma = spec.scale * base_covariance(spec.tag, spec.p, spec.rho, rng);
  if (spec.delta != 0.0) out.sigma += banded_perturbation(spec.p, spec.delta);
  out.factor = covariance_factor(out.sigma);
  return out;
}

}  // namespace ellcov::sim
