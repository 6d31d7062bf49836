#include "ellcov/rng.hpp"
#include "ellcov/variance.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace ellcov {
namespace {

Eigen::MatrixXd random_spsd(Index p, Index rank, Rng& rng) {
  std::normal_distribution<double> z;
  Eigen::MatrixXd a(p, rank);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < rank; ++j) a(i, j) = z(rng);
  return a * a.transpose() / static_cast<double>(rank);
}

PopulationPair pair_of(Eigen::MatrixXd s1, Eigen::MatrixXd s2, Index n1, Index n2) {
  return PopulationPair{std::move(s1), std::move(s2), n1, n2};
}

// sigma_n^2 for S1 = a I, S2 = b I, written out term by term:
//   sum_i [4/n_i^2 (p s_i^2)^2 + 8/n_i p s_i^2 d^2 + 4 (tau_i - 2)/n_i p s_i^2 d^2]
//   + 8/(n1 n2) (p a b)^2,  d = a - b.
double scalar_sigma_sq(double a, double b, double p, double n1, double n2, double t1,
                       double t2) {
  const double d2 = (a - b) * (a - b);
  auto term = [&](double s, double n, double tau) {
    return 4.0 / (n * n) * std::pow(p * s * s, 2) + 8.0 / n * p * s * s * d2 +
           4.0 * (tau - 2.0) / n * p * s * s * d2;
  };
  return term(a, n1, t1) + term(b, n2, t2) + 8.0 / (n1 * n2) * std::pow(p * a * b, 2);
}

TEST(SigmaN, IdentityVersusFiveIdentity) {
  const Index p = 200;
  const auto pop = pair_of(Eigen::MatrixXd::Identity(p, p), 5.0 * Eigen::MatrixXd::Identity(p, p),
                           100, 100);
  EXPECT_NEAR(sigma_n_squared(pop, {2, 2, 3, 3}), 17472.0, 1e-8);
  for (const double tau : {0.0, 0.5, 3.0, 5.0}) {
    EXPECT_NEAR(sigma_n_squared(pop, {tau, tau, 3, 3}), 17472.0 + 3328.0 * (tau - 2.0), 1e-8);
  }
}

TEST(SigmaN, ScalarMultiplesMatchTermByTermEvaluation) {
  for (const auto& [a, b, p, n1, n2, t1, t2] :
       {std::tuple{1.0, 5.0, 10, 30, 40, 2.0, 2.0}, std::tuple{2.0, 0.5, 7, 12, 9, 0.3, 5.0},
        std::tuple{3.0, 3.0, 4, 5, 6, 4.0, 1.0}}) {
    const auto pop = pair_of(a * Eigen::MatrixXd::Identity(p, p),
                             b * Eigen::MatrixXd::Identity(p, p), n1, n2);
    const double expected = scalar_sigma_sq(a, b, p, n1, n2, t1, t2);
    EXPECT_NEAR(sigma_n_squared(pop, {t1, t2, 3, 3}), expected, 1e-10 * expected);
  }
}

TEST(SigmaN, EqualCovariancesReduceToNullForm) {
  Rng rng = substream(31, 0);
  const Eigen::MatrixXd s = random_spsd(8, 12, rng);
  const auto pop = pair_of(s, s, 15, 25);
  const double tr2 = (s * s).trace();
  const double expected = 4.0 * std::pow(1.0 / 15 + 1.0 / 25, 2) * tr2 * tr2;
  EXPECT_NEAR(sigma_null_squared(pop), expected, 1e-12 * expected);
  for (const double tau : {0.0, 2.0, 7.0}) {
    EXPECT_NEAR(sigma_n_squared(pop, {tau, tau + 1, 3, 3}), expected, 1e-12 * expected);
  }
}

TEST(SigmaN, LowerBoundOnRandomPairs) {
  Rng rng = substream(32, 0);
  std::uniform_real_distribution<double> tau(0.0, 6.0);
  for (int k = 0; k < 50; ++k) {
    const Index p = 2 + k % 9;
    const auto pop = pair_of(random_spsd(p, 1 + k % 5, rng), random_spsd(p, p + 3, rng),
                             5 + k, 40 - k / 2);
    const double t1 = (pop.sigma1 * pop.sigma1).trace();
    const double t2 = (pop.sigma2 * pop.sigma2).trace();
    const double bound = 4.0 / std::pow(pop.n1, 2) * t1 * t1 + 4.0 / std::pow(pop.n2, 2) * t2 * t2;
    EXPECT_GE(sigma_n_squared(pop, {tau(rng), tau(rng), 3, 3}), bound * (1 - 1e-12));
  }
}

TEST(SigmaNull, Examples) {
  const auto id = pair_of(Eigen::MatrixXd::Identity(30, 30), Eigen::MatrixXd::Identity(30, 30),
                          50, 50);
  EXPECT_NEAR(sigma_null_squared(id), 16.0 * 900 / 2500, 1e-12);
  const auto five = pair_of(5.0 * Eigen::MatrixXd::Identity(200, 200),
                            5.0 * Eigen::MatrixXd::Identity(200, 200), 100, 60);
  const double expected = 4.0 * std::pow(1.0 / 100 + 1.0 / 60, 2) * std::pow(25.0 * 200, 2);
  EXPECT_NEAR(sigma_null_squared(five), expected, 1e-10 * expected);
}

TEST(SigmaHat, PlugInScale) {
  const Index p = 40, n = 80;
  EXPECT_DOUBLE_EQ(sigma_hat_null(p, p, n, n).value, 4.0 * p / n);
  const auto pop = pair_of(Eigen::MatrixXd::Identity(p, p), Eigen::MatrixXd::Identity(p, p), n, n);
  EXPECT_DOUBLE_EQ(sigma_hat_null(p, p, n, n).value, std::sqrt(sigma_null_squared(pop)));
  EXPECT_TRUE(sigma_hat_null(0, 0, n, n).degenerate());
  EXPECT_FALSE(sigma_hat_null(1, 0, n, n).degenerate());
}

TEST(GammaN, CoincidesWithSigmaNAtGaussianMoments) {
  Rng rng = substream(33, 0);
  for (int k = 0; k < 20; ++k) {
    const Index p = 3 + k % 6;
    const auto pop = pair_of(random_spsd(p, p + 2, rng), random_spsd(p, 2 + k % 4, rng), 20, 30);
    const double s = sigma_n_squared(pop, {2, 2, 3, 3});
    EXPECT_NEAR(gamma_n_squared(pop, {2, 2, 3, 3}), s, 1e-10 * s);
  }
}

TEST(GammaN, EqualCovariancesGiveNullForm) {
  Rng rng = substream(34, 0);
  const Eigen::MatrixXd s = random_spsd(6, 9, rng);
  const auto pop = pair_of(s, s, 10, 14);
  EXPECT_NEAR(gamma_n_squared(pop, {2, 2, 9, 1.5}), sigma_null_squared(pop),
              1e-10 * sigma_null_squared(pop));
}

TEST(GammaN, DiagonalHadamardTermByHand) {
  Eigen::VectorXd d1(3), d2(3);
  d1 << 1, 2, 3;
  d2 << 2, 2, 1;
  const auto pop = pair_of(d1.asDiagonal().toDenseMatrix(), d2.asDiagonal().toDenseMatrix(), 10, 20);
  const double nu1 = 5.0, nu2 = 1.5;
  // K_i = S_i^{1/2} D S_i^{1/2} is diagonal with entries s_ij d_j.
  double h1 = 0.0, h2 = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double dj = d1(j) - d2(j);
    h1 += std::pow(d1(j) * dj, 2);
    h2 += std::pow(d2(j) * dj, 2);
  }
  const double expected =
      sigma_n_squared(pop, {2, 2, 3, 3}) + 4.0 * (nu1 - 3) / 10 * h1 + 4.0 * (nu2 - 3) / 20 * h2;
  EXPECT_NEAR(gamma_n_squared(pop, {2, 2, nu1, nu2}), expected, 1e-12 * expected);
  const VarianceReport r = variance_report(pop, {2, 2, nu1, nu2});
  EXPECT_NEAR(r.components.hadamard[0], 4.0 * (nu1 - 3) / 10 * h1, 1e-12);
  EXPECT_NEAR(r.gamma_sq, expected, 1e-12 * expected);
}

TEST(GammaN, RejectsIndefiniteCovariance) {
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(3, 3);
  bad(2, 2) = -1.0;
  const auto pop = pair_of(Eigen::MatrixXd::Identity(3, 3), bad, 10, 10);
  EXPECT_THROW(gamma_n_squared(pop, {2, 2, 3, 3}), std::domain_error);
}

TEST(RadialTau, FiniteDimensionValues) {
  EXPECT_EQ(radial_tau({RadialTag::ChiSq, 100}), 2.0);
  EXPECT_EQ(radial_tau({RadialTag::BetaPrime, 100}), 3.0);
  EXPECT_NEAR(radial_tau({RadialTag::ScaledBeta, 100}), 4.0 / 53.0, 1e-15);
  EXPECT_EQ(radial_tau({RadialTag::GammaLaw, 100}), 5.0);
  EXPECT_NEAR(radial_tau({RadialTag::ScaledGammaSq, 100}), 406.0 / 101.0, 1e-15);
  EXPECT_EQ(radial_tau({RadialTag::FixedRadius, 100}), 0.0);
}

TEST(RadialTau, AgreesWithClosedFormFourthMoments) {
  // E xi^4 = Var(xi^2) + p^2 = p tau + p^2.
  for (const RadialTag tag : {RadialTag::ChiSq, RadialTag::BetaPrime, RadialTag::ScaledBeta,
                              RadialTag::GammaLaw, RadialTag::ScaledGammaSq,
                              RadialTag::FixedRadius}) {
    for (const Index p : {5, 40, 200}) {
      const RadialLaw law{tag, p};
      const double m4 = radial_fourth_moment(law);
      EXPECT_NEAR(m4, double(p) * p + p * radial_tau(law), 1e-9 * m4) << radial_name(tag) << p;
    }
  }
}

TEST(TraceRatio, Examples) {
  const Index p = 25;
  const auto id = pair_of(Eigen::MatrixXd::Identity(p, p), Eigen::MatrixXd::Identity(p, p), 10, 10);
  EXPECT_NEAR(assumption_a3_ratio(id), 1.0 / p, 1e-14);
  Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(p, 1.0, 2.0);
  const auto rank1 = pair_of(v * v.transpose(), 3.0 * v * v.transpose(), 10, 10);
  EXPECT_NEAR(assumption_a3_ratio(rank1), 1.0, 1e-12);
  const auto zero = pair_of(Eigen::MatrixXd::Zero(3, 3), Eigen::MatrixXd::Zero(3, 3), 10, 10);
  EXPECT_THROW(assumption_a3_ratio(zero), std::domain_error);
}

TEST(Helpers, SymmetricSqrtAndTraceOfProduct) {
  Rng rng = substream(35, 0);
  const Eigen::MatrixXd s = random_spsd(7, 3, rng);  // rank deficient
  const Eigen::MatrixXd r = symmetric_sqrt(s);
  EXPECT_LT((r * r - s).norm(), 1e-10 * s.norm());
  EXPECT_LT((r - r.transpose()).norm(), 1e-14);
  const Eigen::MatrixXd t = random_spsd(7, 7, rng);
  EXPECT_NEAR(trace_of_product(s, t), (s * t).trace(), 1e-12 * std::abs((s * t).trace()));
}

TEST(PopulationPairTest, ValidateRejectsBadShapes) {
  EXPECT_THROW(pair_of(Eigen::MatrixXd::Identity(3, 3), Eigen::MatrixXd::Identity(4, 4), 5, 5).validate(),
               std::invalid_argument);
  Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(3, 3);
  asym(0, 1) = 0.5;
  EXPECT_THROW(pair_of(asym, Eigen::MatrixXd::Identity(3, 3), 5, 5).validate(), std::invalid_argument);
}

}  // namespace
}  // namespace ellcov
