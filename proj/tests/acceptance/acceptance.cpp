// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Pass criterion numbers as arguments to run a subset.

#include "ellcov/brute_force.hpp"
#include "ellcov/moments.hpp"
#include "ellcov/rng.hpp"
#include "ellcov/scenario.hpp"
#include "ellcov/synthetic_panel.hpp"
#include "ellcov/ustat.hpp"
#include "ellcov/variance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace ellcov;
using namespace ellcov::sim;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Stats {
  double mean = 0.0, variance = 0.0, se = 0.0;
};

Stats stats_of(const std::vector<double>& x) {
  Stats s;
  const double n = static_cast<double>(x.size());
  for (double v : x) s.mean += v;
  s.mean /= n;
  for (double v : x) s.variance += (v - s.mean) * (v - s.mean);
  s.variance /= n - 1;
  s.se = std::sqrt(s.variance / n);
  return s;
}

std::string fmt(double x, int digits = 4) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

const RadialTag kLaws[] = {RadialTag::ChiSq, RadialTag::BetaPrime, RadialTag::ScaledBeta,
                           RadialTag::GammaLaw, RadialTag::ScaledGammaSq};
const CovarianceCase kCases[] = {CovarianceCase::BulkTwoLevel, CovarianceCase::Toeplitz,
                                 CovarianceCase::Spiked};
const char* kRoman[] = {"i", "ii", "iii", "iv", "v"};

ScenarioConfig cell(CovarianceCase c, int law, Index n1, Index n2, Index p, double delta,
                    std::uint64_t seed) {
  ScenarioConfig s;
  const char letter = c == CovarianceCase::BulkTwoLevel ? 'a' : c == CovarianceCase::Toeplitz ? 'b' : 'c';
  s.name = std::string("(") + letter + ")(" + kRoman[law] + ")";
  s.covariance = c;
  s.radial1 = s.radial2 = kLaws[law];
  s.n1 = n1;
  s.n2 = n2;
  s.p = p;
  s.delta = delta;
  s.replicates = 500;
  s.alpha = 0.05;
  s.seed = seed;
  return s;
}

// Runs the 15 (case x law) cells and checks each rate with `ok`.
Verdict grid(Index n1, Index n2, Index p, double delta, std::uint64_t seed0,
             const std::function<bool(CovarianceCase, double)>& ok,
             const std::set<CovarianceCase>& cases) {
  Verdict v{true, ""};
  std::ostringstream os;
  std::uint64_t seed = seed0;
  for (const CovarianceCase c : kCases) {
    if (!cases.count(c)) continue;
    for (int law = 0; law < 5; ++law, ++seed) {
      const ScenarioConfig s = cell(c, law, n1, n2, p, delta, seed);
      const RejectionReport r = run_scenario(s);
      const bool good = ok(c, r.rejection_rate);
      v.pass = v.pass && good;
      os << s.name << "=" << fmt(r.rejection_rate, 3) << (good ? "" : "(!)") << " ";
      std::cerr << "    " << s.name << " delta=" << delta << " rate " << r.rejection_rate
                << " (" << fmt(r.elapsed_seconds, 3) << " s)\n";
    }
  }
  v.detail = os.str();
  return v;
}

Verdict criterion1() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng = substream(20240101, 0);
  std::uniform_int_distribution<Index> nd(4, 12), pd(1, 8);
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> shift(-2.0, 2.0);
  int failures = 0;
  double worst = 0.0;
  const int instances = 200;
  for (int k = 0; k < instances; ++k) {
    const Index n1 = nd(rng), n2 = nd(rng), p = pd(rng);
    auto draw = [&](Index n) {
      RowMatrix m(n, p);
      const double mu = shift(rng);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < p; ++j) m(i, j) = mu + z(rng);
      return DataMatrix(std::move(m));
    };
    const DataMatrix x1 = draw(n1), x2 = draw(n2);
    const TraceEstimates f = t_statistic(x1, x2);
    const TraceEstimates b = brute_force_estimates(x1, x2);
    const double scale_t = std::abs(b.u1) + std::abs(b.u2) + 2 * std::abs(b.v);
    const double err = std::max({std::abs(f.u1 - b.u1) / std::abs(b.u1),
                                 std::abs(f.u2 - b.u2) / std::abs(b.u2),
                                 std::abs(f.v - b.v) / std::max(std::abs(b.v), 1e-300),
                                 std::abs(f.t - b.t) / scale_t});
    worst = std::max(worst, err);
    if (!(err <= 1e-10)) ++failures;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {failures == 0 && secs < 30.0,
          std::to_string(instances) + " instances, max relative error " + fmt(worst, 3) +
              ", " + std::to_string(failures) + " failures, " + fmt(secs, 3) + " s"};
}

Verdict criterion2() {
  const auto start = std::chrono::steady_clock::now();
  ScenarioConfig s;
  s.covariance = CovarianceCase::Identity;
  s.n1 = s.n2 = 20;
  s.p = 50;
  s.replicates = 20000;
  s.seed = 20240102;
  const auto est = replicate_estimates(s, make_population(s));
  std::vector<double> u1, v;
  for (const auto& e : est) {
    u1.push_back(e.u1);
    v.push_back(e.v);
  }
  const Stats su = stats_of(u1), sv = stats_of(v);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = std::abs(su.mean - 50) <= 3 * su.se && std::abs(sv.mean - 50) <= 3 * sv.se &&
                  secs < 120.0;
  return {ok, "mean U = " + fmt(su.mean, 6) + " (SE " + fmt(su.se, 3) + "), mean V = " +
                  fmt(sv.mean, 6) + " (SE " + fmt(sv.se, 3) + "), " + fmt(secs, 3) + " s"};
}

Verdict criterion3() {
  return grid(300, 300, 100, 0.0, 3000, [](CovarianceCase, double r) { return r >= 0.02 && r <= 0.09; },
              {kCases[0], kCases[1], kCases[2]});
}

Verdict criterion4() {
  return grid(
      300, 300, 100, 0.2, 4000,
      [](CovarianceCase c, double r) {
        return c == CovarianceCase::Toeplitz ? r >= 0.95 : r >= 0.90;
      },
      {CovarianceCase::Toeplitz, CovarianceCase::Spiked});
}

Verdict criterion5() {
  const Verdict h0 = grid(50, 100, 300, 0.0, 5000,
                          [](CovarianceCase, double r) { return r >= 0.02 && r <= 0.09; },
                          {kCases[0], kCases[1], kCases[2]});
  const Verdict h1 = grid(50, 100, 300, 0.3, 5100, [](CovarianceCase, double r) { return r >= 0.60; },
                          {CovarianceCase::Spiked});
  return {h0.pass && h1.pass, "H0: " + h0.detail + "| H1 delta=0.3: " + h1.detail};
}

Verdict criterion6() {
  Verdict out{true, ""};
  for (const auto& [law, over_shrink] : {std::pair{RadialTag::ScaledBeta, true},
                                         std::pair{RadialTag::ScaledGammaSq, false}}) {
    ScenarioConfig s;
    s.name = std::string("clt-") + std::string(radial_name(law));
    s.covariance = CovarianceCase::Identity;
    s.scale2 = 5.0;
    s.n1 = s.n2 = 100;
    s.p = 200;
    s.radial1 = s.radial2 = law;
    s.replicates = 2000;
    s.seed = 20240106;
    const Stats sig = stats_of(clt_histogram(s, Standardizer::SigmaN));
    const Stats gam = stats_of(clt_histogram(s, Standardizer::GammaN));
    const bool sig_ok = std::abs(sig.mean) <= 0.1 && sig.variance >= 0.85 && sig.variance <= 1.15;
    const bool gam_ok = over_shrink ? gam.variance < 0.85 : gam.variance > 1.15;
    out.pass = out.pass && sig_ok && gam_ok;
    out.detail += std::string(radial_name(law)) + ": sigma_n mean " + fmt(sig.mean, 3) +
                  " var " + fmt(sig.variance, 3) + ", gamma_n var " + fmt(gam.variance, 3) +
                  (over_shrink ? " (expect < 0.85)" : " (expect > 1.15)") + "; ";
  }
  return out;
}

Verdict criterion7() {
  Verdict out{true, ""};
  double previous = 1e300;
  for (const auto& [n, p] : {std::pair<Index, Index>{100, 50}, {200, 100}, {400, 200}}) {
    ScenarioConfig s;
    s.covariance = CovarianceCase::Identity;
    s.n1 = s.n2 = n;
    s.p = p;
    s.replicates = 500;
    s.seed = 20240107;
    const auto pop = make_population(s);
    const double sigma0 = std::sqrt(sigma_null_squared({pop.sigma1, pop.sigma2, n, n}));
    std::vector<double> ratio;
    double ms = 0.0;
    for (const auto& e : replicate_estimates(s, pop)) {
      const double r = sigma_hat_null(e.u1, e.u2, n, n).value / sigma0;
      ratio.push_back(r);
      ms += (r - 1) * (r - 1);
    }
    const double rms = std::sqrt(ms / static_cast<double>(ratio.size()));
    const double mean = stats_of(ratio).mean;
    const bool ok = std::abs(mean - 1) <= 0.05 && rms < previous;
    out.pass = out.pass && ok;
    previous = rms;
    out.detail += "(" + std::to_string(n) + "," + std::to_string(p) + "): mean " + fmt(mean, 5) +
                  " rms dev " + fmt(rms, 3) + (ok ? "" : "(!)") + "; ";
  }
  return out;
}

Verdict criterion8() {
  const auto start = std::chrono::steady_clock::now();
  MomentSuiteOptions o;
  o.replicates = 100000;
  Verdict out{true, ""};
  for (const MomentCheck& c : moment_identity_suite(o)) {
    const double z = (c.estimate - c.expected) / c.standard_error;
    out.pass = out.pass && c.pass();
    out.detail += c.name.substr(0, 3) + " z=" + fmt(z, 3) + " ";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.pass = out.pass && secs < 60.0;
  out.detail += "(" + fmt(secs, 3) + " s)";
  return out;
}

Verdict criterion9() {
  ScenarioConfig s;
  s.covariance = CovarianceCase::BulkTwoLevel;
  s.n1 = s.n2 = 50;
  s.p = 40;
  s.replicates = 5000;
  s.seed = 20240109;
  const auto pop = make_population(s);
  std::vector<double> t;
  for (const auto& e : replicate_estimates(s, pop)) t.push_back(e.t);
  const double mc = stats_of(t).variance;
  const double analytic = sigma_n_squared({pop.sigma1, pop.sigma2, 50, 50}, {2, 2, 3, 3});
  const double rel = std::abs(mc / analytic - 1);
  return {rel <= 0.15, "Var(T) Monte Carlo " + fmt(mc, 5) + " vs sigma_n^2 " + fmt(analytic, 5) +
                           " (relative gap " + fmt(rel, 3) + ")"};
}

namespace fs = std::filesystem;

// Ingest a price file and test the 2017Q2 split through the command-line tool.
// Returns 1 for reject, 0 for no rejection, -1 on a pipeline error.
int pipeline_rejects(const fs::path& prices, const fs::path& work) {
  const fs::path s1 = work / "s1.csv", s2 = work / "s2.csv", out = work / "outcome.jsonl";
  const std::string cli = ELLCOV_CLI;
  const std::string ingest = cli + " ingest " + prices.string() + " --boundary 2017Q2 --out " +
                             (work / "returns.csv").string() + " --sample1 " + s1.string() +
                             " --sample2 " + s2.string() + " 2>/dev/null";
  const std::string test = cli + " test " + s1.string() + " " + s2.string() +
                           " --header --alpha 0.05 --format jsonl --out " + out.string();
  if (std::system(ingest.c_str()) != 0 || std::system(test.c_str()) != 0) return -1;
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  if (line.find("\"reject\":true") != std::string::npos) return 1;
  if (line.find("\"reject\":false") != std::string::npos) return 0;
  return -1;
}

Verdict criterion10() {
  const fs::path work = fs::temp_directory_path() / "ellcov_acceptance_pipeline";
  fs::create_directories(work);
  const int bundled_break = pipeline_rejects(fs::path(ELLCOV_DATA) / "panel_break.csv", work);
  const int bundled_nobreak = pipeline_rejects(fs::path(ELLCOV_DATA) / "panel_nobreak.csv", work);

  const int regenerations = 100;
  int kept = 0, errors = 0;
  for (int k = 0; k < regenerations; ++k) {
    PanelSynthesisConfig cfg;
    cfg.seed = 9000 + static_cast<std::uint64_t>(k);
    const fs::path prices = work / "prices.csv";
    {
      std::ofstream out(prices, std::ios::binary);
      write_synthetic_price_panel(out, cfg);
    }
    const int r = pipeline_rejects(prices, work);
    if (r == 0) ++kept;
    if (r < 0) ++errors;
  }
  fs::remove_all(work);
  const double frac = static_cast<double>(kept) / regenerations;
  const bool ok = bundled_break == 1 && bundled_nobreak == 0 && errors == 0 && frac >= 0.90;
  return {ok, "break panel reject=" + std::to_string(bundled_break) +
                  ", bundled no-break reject=" + std::to_string(bundled_nobreak) +
                  ", no-break regenerations not rejected " + std::to_string(kept) + "/" +
                  std::to_string(regenerations) + " (" + std::to_string(errors) + " errors)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, Verdict (*)()>> criteria{
      {"oracle equivalence (200 random instances, relative 1e-10, < 30 s)", criterion1},
      {"unbiasedness of U and V (I_50, n = 20, R = 20000)", criterion2},
      {"level at (300,300,100), 15 cells in [0.02, 0.09]", criterion3},
      {"power at (300,300,100), delta = 0.2: (b) >= 0.95, (c) >= 0.90", criterion4},
      {"reduced samples (50,100,300): H0 in [0.02, 0.09], (c) delta = 0.3 >= 0.60", criterion5},
      {"CLT standardization: sigma_n ~ N(0,1), gamma_n over/under-shrinks", criterion6},
      {"ratio-consistency of the plug-in null scale", criterion7},
      {"mixed-moment identities at 3 SE (R = 1e5, p = 5)", criterion8},
      {"Var(T) Monte Carlo vs sigma_n^2 within 15%", criterion9},
      {"price-panel pipeline: break rejected, no-break kept >= 90%", criterion10},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << criteria[k].first
              << " | " << v.detail << " [" << fmt(secs, 3) << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
