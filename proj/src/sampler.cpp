#include "ellcov/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace ellcov::sim {

namespace {
double draw_gamma(double shape, Rng& rng) {
  return std::gamma_distribution<double>(shape, 1.0)(rng);
}
}  // namespace

double sample_radial_squared(const RadialLaw& law, Rng& rng) {
  const double p = static_cast<double>(law.p);
  switch (law.tag) {
    case RadialTag::ChiSq:
      return std::chi_squared_distribution<double>(p)(rng);
    case RadialTag::BetaPrime: {
      const double a = draw_gamma(p * (p + 4.0) / 3.0, rng);
      const double b = draw_gamma((p + 7.0) / 3.0, rng);
      return a / b;
    }
    case RadialTag::ScaledBeta: {
      const double x = draw_gamma(p / 2.0, rng);
      const double y = draw_gamma(2.0, rng);
      return (p + 4.0) * x / (x + y);
    }
    case RadialTag::GammaLaw:
      // Shape p/5 and rate 1/5, i.e. scale 5.
      return std::gamma_distribution<double>(p / 5.0, 5.0)(rng);
    case RadialTag::ScaledGammaSq: {
      const double g = draw_gamma(p, rng);
      return g * g / (p + 1.0);
    }
    case RadialTag::FixedRadius:
      return p;
  }
  throw std::invalid_argument("unsupported radial law");
}

double sample_radial(const RadialLaw& law, Rng& rng) {
  return std::sqrt(sample_radial_squared(law, rng));
}

namespace {
// Fills `row` with a uniform unit vector.
template <typename Row>
void fill_sphere(Row&& row, Rng& rng, std::normal_distribution<double>& normal) {
  for (;;) {
    for (Index k = 0; k < row.size(); ++k) row(k) = normal(rng);
    const double norm = row.norm();
    if (norm >= 1e-12) {
      row /= norm;
      return;
    }
  }
}
}  // namespace

Eigen::VectorXd sample_sphere(Index p, Rng& rng) {
  if (p < 1) throw std::invalid_argument("sample_sphere: p must be >= 1");
  std::normal_distribution<double> normal;
  Eigen::VectorXd u(p);
  fill_sphere(u, rng, normal);
  return u;
}

DataMatrix sample_elliptical(const EllipticalSpec& spec, Rng& rng) {
  const Index p = spec.factor.rows();
  if (spec.factor.cols() != p || p < 1) {
    throw std::invalid_argument("sample_elliptical: factor must be square and non-empty");
  }
  if (spec.radial.p != p) throw std::invalid_argument("sample_elliptical: radial law p mismatch");
  if (spec.mean.size() != 0 && spec.mean.size() != p) {
    throw std::invalid_argument("sample_elliptical: mean has the wrong length");
  }
  if (spec.n < 1) throw std::invalid_argument("sample_elliptical: n must be >= 1");

  std::normal_distribution<double> normal;
  RowMatrix z(spec.n, p);
  for (Index j = 0; j < spec.n; ++j) {
    fill_sphere(z.row(j), rng, normal);
    z.row(j) *= sample_radial(spec.radial, rng);
  }
  RowMatrix x = z * spec.factor.transpose();
  if (spec.mean.size() == p) x.rowwise() += spec.mean.transpose();
  return DataMatrix(std::move(x));
}

}  // namespace ellcov::sim
