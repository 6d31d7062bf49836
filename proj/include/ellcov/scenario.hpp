#pragma once

// Monte Carlo campaigns: rejection rates for a two-sample scenario and the
// standardized values behind the CLT histograms.

#include "ellcov/covariance.hpp"
#include "ellcov/radial_law.hpp"
#include "ellcov/ustat.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ellcov::sim {

struct ScenarioConfig {
  std::string name = "scenario";
  Index n1 = 300;
  Index n2 = 300;
  Index p = 100;
  RadialTag radial1 = RadialTag::ChiSq;
  RadialTag radial2 = RadialTag::ChiSq;
  CovarianceCase covariance = CovarianceCase::BulkTwoLevel;
  double rho = kDefaultToeplitzRho;
  double delta = 0.0;   ///< 0 is the null hypothesis
  double scale2 = 1.0;  ///< S2 = scale2 * S1 + B(delta)
  double mean1 = 0.0;   ///< every coordinate of the sample-1 location
  double mean2 = 0.0;
  Index replicates = 500;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  double nu3_1 = 3.0;  ///< only used by the gamma_n standardizer
  double nu3_2 = 3.0;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

/// Population covariances and sampling factors for a scenario. S1 depends only on
/// (covariance, p, rho, seed), so the null and alternative share it.
struct ScenarioPopulation {
  Eigen::MatrixXd sigma1, sigma2;
  Eigen::MatrixXd factor1, factor2;
};

ScenarioPopulation make_population(const ScenarioConfig& config);

struct RejectionReport {
  ScenarioConfig scenario;
  Index rejections = 0;
  double rejection_rate = 0.0;
  double monte_carlo_se = 0.0;   ///< sqrt(r (1 - r) / R)
  std::vector<double> statistics;  ///< per-replicate standardized statistic, when kept
  double elapsed_seconds = 0.0;
};

/// Per-replicate trace estimates. Replicate r draws from substream(seed, r + 1), so the
/// result does not depend on the thread count.
std::vector<TraceEstimates> replicate_estimates(const ScenarioConfig& config,
                                                const ScenarioPopulation& population);

RejectionReport run_scenario(const ScenarioConfig& config, bool keep_statistics = false);

enum class Standardizer { SigmaN, GammaN };

/// (T - ||S1 - S2||_F^2) / scale for each replicate, scale = sigma_n (tau from the
/// finite-p radial laws) or gamma_n (nu3 from the config).
std::vector<double> clt_histogram(const ScenarioConfig& config, Standardizer standardizer);

}  // namespace ellcov::sim
