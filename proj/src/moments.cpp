#include "ellcov/moments.hpp"

#include "ellcov/covariance.hpp"
#include "ellcov/rng.hpp"
#include "ellcov/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace ellcov::sim {

bool MomentCheck::pass() const {
  return std::isfinite(estimate) && std::abs(estimate - expected) <= tolerance_se * standard_error;
}

namespace {

// Welford running mean and variance.
class Running {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  double mean() const { return mean_; }
  double standard_error() const {
    return n_ > 1 ? std::sqrt(m2_ / static_cast<double>(n_ - 1) / static_cast<double>(n_)) : 0.0;
  }

 private:
  long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

Eigen::MatrixXd default_sigma() {
  Rng unused(0);
  return base_covariance(CovarianceCase::Toeplitz, 5, 0.5, unused);
}

}  // namespace

std::vector<MomentCheck> moment_identity_suite(const MomentSuiteOptions& options) {
  const Eigen::MatrixXd sigma = options.sigma.size() == 0 ? default_sigma() : options.sigma;
  const Index p = sigma.rows();
  if (sigma.cols() != p || p < 1) throw std::invalid_argument("moment suite: bad covariance");
  if (options.replicates < 2) throw std::invalid_argument("moment suite: need >= 2 replicates");

  const Eigen::MatrixXd factor = covariance_factor(sigma);
  const RadialLaw law{options.radial, p};
  const double dp = static_cast<double>(p);
  const double kappa = radial_fourth_moment(law) / (dp * (dp + 2.0));
  const Eigen::MatrixXd s2 = sigma * sigma;
  const double tr2 = s2.trace();
  const double tr4 = (s2 * s2).trace();
  const double quad = tr2 * tr2 + 2.0 * tr4;

  Rng rng = substream(options.seed, 0);
  auto draw = [&]() -> Eigen::VectorXd {
    const Eigen::VectorXd u = sample_sphere(p, rng);
    return sample_radial(law, rng) * (factor * u);
  };

  Running a, b, c, d, e;
  for (Index r = 0; r < options.replicates; ++r) {
    const Eigen::VectorXd x = draw();
    const Eigen::VectorXd x1 = draw();
    const Eigen::VectorXd x2 = draw();
    const Eigen::VectorXd x3 = draw();
    const Eigen::VectorXd x4 = draw();
    const double centered = x.dot(sigma * x) - tr2;
    const double b12 = x1.dot(x2);
    const double b23 = x2.dot(x3);
    const double b34 = x3.dot(x4);
    a.add(centered * centered);
    b.add(b12 * b12 * b23 * b23);
    c.add(b12 * b12);
    d.add(b12 * b12 * b34 * b34);
    e.add(b12 * b12 * b12 * b12);
  }

  return {
      {"(a) Var(x'Sx)", kappa * quad - tr2 * tr2, a.mean(), a.standard_error()},
      {"(b) E[(x1'x2 x2'x3)^2]", kappa * quad, b.mean(), b.standard_error()},
      {"(c) E[(x1'x2)^2]", tr2, c.mean(), c.standard_error()},
      {"(d) E[(x1'x2 x3'x4)^2]", tr2 * tr2, d.mean(), d.standard_error()},
      {"(e) E[(x1'x2)^4]", 3.0 * kappa * kappa * quad, e.mean(), e.standard_error()},
  };
}

}  // namespace ellcov::sim
