#include "ellcov/scenario.hpp"

#include "ellcov/parallel.hpp"
#include "ellcov/sampler.hpp"
#include "ellcov/test_procedure.hpp"
#include "ellcov/variance.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <stdexcept>

namespace ellcov::sim {

void ScenarioConfig::validate() const {
  auto fail = [this](const std::string& what) {
    throw std::invalid_argument("scenario '" + name + "': " + what);
  };
  if (n1 < 4 || n2 < 4) fail("n1 and n2 must be >= 4");
  if (p < 1) fail("p must be >= 1");
  if (replicates < 1) fail("replicates must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must lie in (0, 1)");
  if (!(delta >= 0.0)) fail("delta must be >= 0");
  if (!(scale2 > 0.0)) fail("scale2 must be > 0");
  if (covariance == CovarianceCase::BulkTwoLevel && p % 2 != 0) fail("case (a) needs even p");
  if (covariance == CovarianceCase::Spiked && p < 3) fail("case (c) needs p >= 3");
  if (covariance == CovarianceCase::Toeplitz && !(std::abs(rho) < 1.0)) fail("|rho| must be < 1");
  if (!(nu3_1 >= 1.0 && nu3_2 >= 1.0)) fail("nu3 must be >= 1");
}

ScenarioPopulation make_population(const ScenarioConfig& config) {
  config.validate();
  Rng rng = substream(config.seed, 0);
  ScenarioPopulation pop;
  pop.sigma1 = base_covariance(config.covariance, config.p, config.rho, rng);
  pop.sigma2 = config.scale2 * pop.sigma1;
  if (config.delta != 0.0) pop.sigma2 += banded_perturbation(config.p, config.delta);
  pop.factor1 = covariance_factor(pop.sigma1);
  pop.factor2 = covariance_factor(pop.sigma2);
  return pop;
}

std::vector<TraceEstimates> replicate_estimates(const ScenarioConfig& config,
                                                const ScenarioPopulation& population) {
  config.validate();
  EllipticalSpec spec1{{config.radial1, config.p}, population.factor1,
                       Eigen::VectorXd::Constant(config.p, config.mean1), config.n1};
  EllipticalSpec spec2{{config.radial2, config.p}, population.factor2,
                       Eigen::VectorXd::Constant(config.p, config.mean2), config.n2};

  const Index reps = config.replicates;
  std::vector<TraceEstimates> out(static_cast<std::size_t>(reps));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
  for (Index r = 0; r < reps; ++r) {
    try {
      Rng rng = substream(config.seed, static_cast<std::uint64_t>(r) + 1);
      const DataMatrix x1 = sample_elliptical(spec1, rng);
      const DataMatrix x2 = sample_elliptical(spec2, rng);
      out[static_cast<std::size_t>(r)] = t_statistic(x1, x2, Execution::Serial);
    } catch (...) {
#pragma omp critical(ellcov_replicate_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

RejectionReport run_scenario(const ScenarioConfig& config, bool keep_statistics) {
  const auto start = std::chrono::steady_clock::now();
  const ScenarioPopulation pop = make_population(config);
  const std::vector<TraceEstimates> est = replicate_estimates(config, pop);

  RejectionReport report;
  report.scenario = config;
  if (keep_statistics) report.statistics.reserve(est.size());
  for (const TraceEstimates& e : est) {
    const TestOutcome o = decide(e, config.n1, config.n2, config.p, config.alpha);
    if (o.reject) ++report.rejections;
    if (keep_statistics) report.statistics.push_back(o.statistic);
  }
  const double r = static_cast<double>(report.rejections) / static_cast<double>(est.size());
  report.rejection_rate = r;
  report.monte_carlo_se = std::sqrt(r * (1.0 - r) / static_cast<double>(est.size()));
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<double> clt_histogram(const ScenarioConfig& config, Standardizer standardizer) {
  const ScenarioPopulation pop = make_population(config);
  PopulationPair pair{pop.sigma1, pop.sigma2, config.n1, config.n2};
  RadialMoments mom;
  mom.tau1 = radial_tau({config.radial1, config.p});
  mom.tau2 = radial_tau({config.radial2, config.p});
  mom.nu3_1 = config.nu3_1;
  mom.nu3_2 = config.nu3_2;
  const double variance = standardizer == Standardizer::SigmaN ? sigma_n_squared(pair, mom)
                                                               : gamma_n_squared(pair, mom);
  if (!(variance > 0.0)) throw std::domain_error("clt_histogram: nonpositive variance");
  const double scale = std::sqrt(variance);
  const double signal = (pop.sigma1 - pop.sigma2).squaredNorm();

  const std::vector<TraceEstimates> est = replicate_estimates(config, pop);
  std::vector<double> values;
  values.reserve(est.size());
  for (const TraceEstimates& e : est) values.push_back((e.t - signal) / scale);
  return values;
}

}  // namespace ellcov::sim
