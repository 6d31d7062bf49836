#include "ellcov/selftest.hpp"

#include "ellcov/brute_force.hpp"
#include "ellcov/moments.hpp"
#include "ellcov/normal.hpp"
#include "ellcov/rng.hpp"
#include "ellcov/ustat.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace ellcov {

namespace {

DataMatrix random_sample(Index n, Index p, Rng& rng) {
  std::normal_distribution<double> z(0.0, 1.0);
  std::uniform_real_distribution<double> shift(-3.0, 3.0);
  std::uniform_real_distribution<double> log_scale(-2.0, 2.0);
  const double scale = std::exp(log_scale(rng));
  RowMatrix m(n, p);
  for (Index j = 0; j < p; ++j) {
    const double mu = shift(rng);
    for (Index i = 0; i < n; ++i) m(i, j) = mu + scale * z(rng);
  }
  return DataMatrix(std::move(m));
}

bool close(double fast, double exact, double scale) {
  return std::abs(fast - exact) <= 1e-10 * std::max({std::abs(exact), scale, 1e-300});
}

SuiteResult oracle_suite(const SelftestOptions& options) {
  Rng rng = substream(0x5e1f7e57, 0);
  std::uniform_int_distribution<Index> n_dist(4, 12);
  std::uniform_int_distribution<Index> p_dist(1, 8);
  int failures = 0;
  int mismatched_modes = 0;
  std::ostringstream detail;
  for (int k = 0; k < options.oracle_instances; ++k) {
    const Index n1 = n_dist(rng), n2 = n_dist(rng), p = p_dist(rng);
    const DataMatrix x1 = random_sample(n1, p, rng);
    const DataMatrix x2 = random_sample(n2, p, rng);
    const TraceEstimates exact = brute_force_estimates(x1, x2);
    TraceEstimates fast = t_statistic(x1, x2, Execution::Parallel);
    const TraceEstimates serial = t_statistic(x1, x2, Execution::Serial);
    if (serial.u1 != fast.u1 || serial.u2 != fast.u2 || serial.v != fast.v) ++mismatched_modes;
    if (options.gram_perturbation != 0.0) {
      fast = assemble(fast.u1 * (1.0 + options.gram_perturbation), fast.u2, fast.v);
    }
    const double scale = std::abs(exact.u1) + std::abs(exact.u2) + 2.0 * std::abs(exact.v);
    const bool ok = close(fast.u1, exact.u1, 0.0) && close(fast.u2, exact.u2, 0.0) &&
                    close(fast.v, exact.v, 0.0) && close(fast.t, exact.t, scale);
    if (!ok && failures++ == 0) {
      detail << "first mismatch at instance " << k << " (n1=" << n1 << ", n2=" << n2
             << ", p=" << p << "): fast T=" << fast.t << ", brute-force T=" << exact.t << "; ";
    }
  }
  detail << failures << " of " << options.oracle_instances << " instances disagree; "
         << mismatched_modes << " serial/parallel differences";
  return {"oracle-equivalence", failures == 0 && mismatched_modes == 0, detail.str()};
}

SuiteResult moment_suite(const SelftestOptions& options) {
  sim::MomentSuiteOptions mopt;
  mopt.replicates = options.moment_replicates;
  bool ok = true;
  std::ostringstream detail;
  for (const RadialTag tag : {RadialTag::ChiSq, RadialTag::GammaLaw}) {
    mopt.radial = tag;
    for (const sim::MomentCheck& c : sim::moment_identity_suite(mopt)) {
      if (!c.pass()) {
        ok = false;
        detail << radial_name(tag) << " " << c.name << ": estimate " << c.estimate
               << " vs " << c.expected << " (se " << c.standard_error << "); ";
      }
    }
  }
  if (ok) detail << "5 identities x 2 radial laws within 3 SE";
  return {"moment-identities", ok, detail.str()};
}

SuiteResult quantile_suite() {
  std::vector<double> grid;
  for (int k = 2; k <= 12; ++k) {
    grid.push_back(std::pow(10.0, -k));
    grid.push_back(1.0 - std::pow(10.0, -k));
  }
  for (int k = 1; k < 100; ++k) grid.push_back(k / 100.0);
  double worst = 0.0;
  for (const double q : grid) {
    const double x = normal_quantile(q);
    const double err = q < 0.5 ? std::abs(normal_cdf(x) - q) / q
                               : std::abs(normal_upper_tail(x) - (1.0 - q)) / (1.0 - q);
    worst = std::max(worst, err);
  }
  const bool ok = worst < 1e-9 && std::abs(normal_quantile(0.95) - 1.6448536269514722) < 1e-13;
  std::ostringstream detail;
  detail << "max relative round-trip error " << worst;
  return {"normal-quantile", ok, detail.str()};
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& options, std::ostream& log) {
  std::vector<SuiteResult> results;
  results.push_back(oracle_suite(options));
  results.push_back(moment_suite(options));
  results.push_back(quantile_suite());
  for (const SuiteResult& r : results) {
    log << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
  }
  return results;
}

}  // namespace ellcov
