// ellcov: two-sample covariance equality test, simulation campaigns, CLT histograms and
// price-panel ingestion.

#include "ellcov/csv.hpp"
#include "ellcov/ingest.hpp"
#include "ellcov/scenario.hpp"
#include "ellcov/scenario_config.hpp"
#include "ellcov/selftest.hpp"
#include "ellcov/test_procedure.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace {

using ellcov::io::format_double;
using Field = std::variant<std::string, double, long long, std::uint64_t, bool>;
using Record = std::vector<std::pair<std::string, Field>>;

enum class Format { Csv, JsonLines };

class RecordWriter {
 public:
  RecordWriter(std::ostream& out, Format format, bool header = true)
      : out_(out), format_(format), header_(header) {}

  void write(const Record& rec) {
    if (format_ == Format::JsonLines) {
      nlohmann::ordered_json j;
      for (const auto& [key, value] : rec) {
        std::visit([&](const auto& v) { j[key] = v; }, value);
      }
      out_ << j.dump() << '\n';
      return;
    }
    if (header_ && !header_written_) {
      ellcov::io::CsvRow names;
      for (const auto& kv : rec) names.push_back(kv.first);
      ellcov::io::write_csv_row(out_, names);
      header_written_ = true;
    }
    ellcov::io::CsvRow row;
    for (const auto& kv : rec) row.push_back(to_text(kv.second));
    ellcov::io::write_csv_row(out_, row);
  }

 private:
  static std::string to_text(const Field& f) {
    if (const auto* s = std::get_if<std::string>(&f)) return *s;
    if (const auto* d = std::get_if<double>(&f)) return format_double(*d);
    if (const auto* i = std::get_if<long long>(&f)) return std::to_string(*i);
    if (const auto* u = std::get_if<std::uint64_t>(&f)) return std::to_string(*u);
    return std::get<bool>(f) ? "true" : "false";
  }

  std::ostream& out_;
  Format format_;
  bool header_;
  bool header_written_ = false;
};

/// Either the file named by --out or standard output.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw std::runtime_error("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

const std::map<std::string, Format> kFormats{{"csv", Format::Csv},
                                             {"jsonl", Format::JsonLines},
                                             {"json-lines", Format::JsonLines}};

Record outcome_record(const ellcov::TestOutcome& o) {
  return {{"t", o.t},
          {"sigma_hat", o.sigma_hat},
          {"statistic", o.statistic},
          {"p_value", o.p_value},
          {"reject", o.reject},
          {"alpha", o.alpha},
          {"n1", static_cast<long long>(o.n1)},
          {"n2", static_cast<long long>(o.n2)},
          {"p", static_cast<long long>(o.p)}};
}

Record report_record(const ellcov::sim::RejectionReport& r) {
  const auto& s = r.scenario;
  return {{"name", s.name},
          {"n1", static_cast<long long>(s.n1)},
          {"n2", static_cast<long long>(s.n2)},
          {"p", static_cast<long long>(s.p)},
          {"radial1", std::string(ellcov::radial_name(s.radial1))},
          {"radial2", std::string(ellcov::radial_name(s.radial2))},
          {"covariance", std::string(ellcov::sim::covariance_name(s.covariance))},
          {"rho", s.rho},
          {"delta", s.delta},
          {"scale2", s.scale2},
          {"replicates", static_cast<long long>(s.replicates)},
          {"alpha", s.alpha},
          {"seed", s.seed},
          {"rejections", static_cast<long long>(r.rejections)},
          {"rate", r.rejection_rate},
          {"se", r.monte_carlo_se}};
}

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<long long> replicates;
  std::optional<double> rho;
  std::optional<double> delta;
  std::optional<double> alpha;

  void apply(ellcov::sim::ScenarioConfig& c) const {
    if (seed) c.seed = *seed;
    if (replicates) c.replicates = static_cast<ellcov::Index>(*replicates);
    if (rho) c.rho = *rho;
    if (delta) c.delta = *delta;
    if (alpha) c.alpha = *alpha;
    c.validate();
  }
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "Master RNG seed");
  cmd->add_option("--replicates", o.replicates, "Monte Carlo replicates R");
  cmd->add_option("--rho", o.rho, "Toeplitz correlation for covariance case (b)");
  cmd->add_option("--delta", o.delta, "Banded perturbation size (0 = null)");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-sample test of covariance equality for high-dimensional elliptical data"};
  app.require_subcommand(1);

  // test
  std::string sample1, sample2, out_path;
  std::string format_name = "csv";
  double alpha = 0.05;
  bool has_header = false;
  auto* test = app.add_subcommand("test", "Test S1 = S2 on two CSV matrices (rows = observations)");
  test->add_option("sample1", sample1)->required()->check(CLI::ExistingFile);
  test->add_option("sample2", sample2)->required()->check(CLI::ExistingFile);
  test->add_option("--alpha", alpha, "Significance level in (0, 1)")->capture_default_str();
  test->add_flag("--header", has_header, "Skip the first record of each file");
  test->add_option("--format", format_name, "csv or jsonl")->check(CLI::IsMember(kFormats));
  test->add_option("--out", out_path, "Output file (default: stdout)");

  // simulate
  std::string config_path;
  Overrides overrides;
  auto* simulate = app.add_subcommand("simulate", "Empirical rejection rates for scenario stanzas");
  simulate->add_option("config", config_path)->required()->check(CLI::ExistingFile);
  add_overrides(simulate, overrides);
  simulate->add_option("--alpha", overrides.alpha, "Override the level of every stanza");
  simulate->add_option("--format", format_name, "csv or jsonl")->check(CLI::IsMember(kFormats));
  simulate->add_option("--out", out_path, "Output file (default: stdout)");

  // histogram
  std::string standardizer = "sigma";
  std::string scenario_name;
  auto* histogram = app.add_subcommand("histogram", "Standardized (T - signal) values, one per line");
  histogram->add_option("config", config_path)->required()->check(CLI::ExistingFile);
  histogram->add_option("--standardizer", standardizer, "sigma or gamma")
      ->check(CLI::IsMember({"sigma", "gamma"}));
  histogram->add_option("--scenario", scenario_name, "Stanza name (default: first stanza)");
  add_overrides(histogram, overrides);
  histogram->add_option("--out", out_path, "Output file (default: stdout)");

  // ingest
  std::string prices_path, date_column = "date", tickers, boundary, window_start, window_end;
  std::string sample1_out, sample2_out;
  auto* ingest = app.add_subcommand("ingest", "Price panel CSV -> quarterly log returns -> two samples");
  ingest->add_option("prices", prices_path)->required()->check(CLI::ExistingFile);
  ingest->add_option("--date-column", date_column)->capture_default_str();
  ingest->add_option("--tickers", tickers, "Comma-separated subset of price columns");
  ingest->add_option("--out", out_path, "Return panel CSV (default: stdout)");
  ingest->add_option("--boundary", boundary, "Last quarter of sample 1, e.g. 2017Q2");
  ingest->add_option("--window-start", window_start, "First quarter of sample 1");
  ingest->add_option("--window-end", window_end, "Last quarter of sample 2");
  ingest->add_option("--sample1", sample1_out, "Write sample 1 matrix here");
  ingest->add_option("--sample2", sample2_out, "Write sample 2 matrix here");

  // selftest
  double inject_fault = 0.0;
  auto* selftest = app.add_subcommand("selftest", "Oracle-equivalence and moment-identity suites");
  selftest->add_option("--inject-fault", inject_fault)->group("");

  CLI11_PARSE(app, argc, argv);

  try {
    const Format format = kFormats.at(format_name);

    if (*test) {
      const auto x1 = ellcov::io::read_matrix_csv(sample1, has_header);
      const auto x2 = ellcov::io::read_matrix_csv(sample2, has_header);
      const auto outcome = ellcov::run_test(x1, x2, alpha);
      Output out(out_path);
      RecordWriter(out.stream(), format).write(outcome_record(outcome));
      out.finish();
    } else if (*simulate) {
      auto configs = ellcov::sim::load_scenarios(config_path);
      for (auto& c : configs) overrides.apply(c);
      Output out(out_path);
      RecordWriter writer(out.stream(), format);
      double total = 0.0;
      for (std::size_t k = 0; k < configs.size(); ++k) {
        const auto report = ellcov::sim::run_scenario(configs[k]);
        total += report.elapsed_seconds;
        std::cerr << "[" << (k + 1) << "/" << configs.size() << "] " << configs[k].name
                  << ": rate " << report.rejection_rate << " (seed " << configs[k].seed << ", "
                  << report.elapsed_seconds << " s)\n";
        writer.write(report_record(report));
        out.stream().flush();
      }
      std::cerr << "total wall-clock " << total << " s\n";
      out.finish();
    } else if (*histogram) {
      auto configs = ellcov::sim::load_scenarios(config_path);
      auto it = configs.begin();
      if (!scenario_name.empty()) {
        it = std::find_if(configs.begin(), configs.end(),
                          [&](const auto& c) { return c.name == scenario_name; });
        if (it == configs.end()) throw std::runtime_error("no stanza named '" + scenario_name + "'");
      }
      overrides.apply(*it);
      const auto values = ellcov::sim::clt_histogram(
          *it, standardizer == "gamma" ? ellcov::sim::Standardizer::GammaN
                                       : ellcov::sim::Standardizer::SigmaN);
      Output out(out_path);
      for (double v : values) out.stream() << format_double(v) << '\n';
      out.finish();
    } else if (*ingest) {
      namespace ig = ellcov::ingest;
      const auto prices = ig::load_prices(prices_path, date_column, split_list(tickers));
      const auto& d = prices.diagnostics;
      for (const auto& m : d.messages) std::cerr << "warning: " << m << '\n';
      const auto returns = ig::to_quarterly_log_returns(prices);
      std::cerr << "rows read " << d.rows_read << ", dropped " << d.dropped_rows
                << ", bad cells " << d.bad_cells << ", duplicate dates " << d.duplicate_dates
                << "\n" << returns.tickers.size() << " tickers x " << returns.quarters.size()
                << " quarterly returns (" << returns.quarters.front().label() << ".."
                << returns.quarters.back().label() << ")\n";
      for (const auto& t : returns.excluded) {
        std::cerr << "excluded " << t << ": incomplete history (" << d.coverage.at(t)
                  << " prices)\n";
      }
      Output out(out_path);
      ig::write_return_panel(out.stream(), returns);
      out.finish();
      if (!boundary.empty()) {
        auto opt_quarter = [](const std::string& s) {
          return s.empty() ? std::nullopt : std::optional<ig::Quarter>(ig::Quarter::parse(s));
        };
        const auto split = ig::split_periods(returns, ig::Quarter::parse(boundary),
                                             opt_quarter(window_start), opt_quarter(window_end));
        std::cerr << "split at " << boundary << ": n1 = " << split.first.rows()
                  << ", n2 = " << split.second.rows() << "\n";
        for (const auto& [path, m] : {std::pair{sample1_out, &split.first},
                                      std::pair{sample2_out, &split.second}}) {
          if (path.empty()) continue;
          Output f(path);
          ellcov::io::write_matrix_csv(f.stream(), *m, returns.tickers);
          f.finish();
        }
      } else if (!sample1_out.empty() || !sample2_out.empty()) {
        throw std::runtime_error("--sample1/--sample2 require --boundary");
      }
    } else if (*selftest) {
      ellcov::SelftestOptions options;
      options.gram_perturbation = inject_fault;
      const auto results = ellcov::run_selftest(options, std::cout);
      for (const auto& r : results) {
        if (!r.passed) return 1;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
