#include "ellcov/synthetic_panel.hpp"

#include "ellcov/csv.hpp"
#include "ellcov/sampler.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellcov::sim {

namespace chr = std::chrono;

namespace {

constexpr double kDrift = 0.015;        // mean quarterly log return
constexpr double kWeeklyNoise = 0.01;   // bridge noise inside a quarter
constexpr double kCorrelation = 0.3;    // Toeplitz correlation between neighbouring tickers

chr::sys_days quarter_start(int year, int q) {
  return chr::sys_days{chr::year{year} / chr::month{static_cast<unsigned>(3 * (q - 1) + 1)} /
                       chr::day{1}};
}

std::vector<chr::sys_days> fridays_in(int year, int q) {
  const chr::sys_days begin = quarter_start(year, q);
  const chr::sys_days end = q == 4 ? quarter_start(year + 1, 1) : quarter_start(year, q + 1);
  chr::sys_days d = begin;
  while (chr::weekday{d} != chr::Friday) d += chr::days{1};
  std::vector<chr::sys_days> out;
  for (; d < end; d += chr::days{7}) out.push_back(d);
  return out;
}

std::string iso(chr::sys_days d) {
  const chr::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

}  // namespace

void write_synthetic_price_panel(std::ostream& out, const PanelSynthesisConfig& config) {
  const Index p = config.tickers;
  if (p < 1) throw std::invalid_argument("synthetic panel needs at least one ticker");
  if (config.last_year < config.first_year) {
    throw std::invalid_argument("synthetic panel: last_year precedes first_year");
  }
  if (config.break_quarter < 1 || config.break_quarter > 4 || !(config.break_scale > 0.0)) {
    throw std::invalid_argument("synthetic panel: invalid break specification");
  }

  // Quarterly covariance S = D R D with volatilities 0.10..0.20 and Toeplitz R.
  Rng setup = substream(config.seed, 0);
  std::uniform_real_distribution<double> vol(0.10, 0.20);
  Eigen::VectorXd sd(p);
  for (Index j = 0; j < p; ++j) sd(j) = vol(setup);
  Eigen::MatrixXd cov(p, p);
  for (Index i = 0; i < p; ++i) {
    for (Index j = 0; j < p; ++j) {
      cov(i, j) = sd(i) * sd(j) * std::pow(kCorrelation, static_cast<double>(std::abs(i - j)));
    }
  }
  const Eigen::MatrixXd factor = Eigen::LLT<Eigen::MatrixXd>(cov).matrixL();
  std::uniform_real_distribution<double> start_price(20.0, 200.0);
  Eigen::VectorXd log_price(p);
  for (Index j = 0; j < p; ++j) log_price(j) = std::log(start_price(setup));

  struct Q {
    int year, q;
  };
  std::vector<Q> quarters{{config.first_year - 1, 4}};
  for (int y = config.first_year; y <= config.last_year; ++y) {
    for (int q = 1; q <= 4; ++q) quarters.push_back({y, q});
  }
  const Q gap_quarter = quarters[quarters.size() / 2];

  Rng returns_rng = substream(config.seed, 1);
  Rng noise_rng = substream(config.seed, 2);
  std::normal_distribution<double> noise(0.0, kWeeklyNoise);
  const RadialLaw law{config.radial, p};
  const double break_sd = std::sqrt(config.break_scale);

  std::vector<std::string> header{"date"};
  char name[32];
  for (Index j = 0; j < p; ++j) {
    std::snprintf(name, sizeof name, "T%03ld", static_cast<long>(j + 1));
    header.emplace_back(name);
  }
  if (config.add_gap_ticker) header.emplace_back("GAPX");
  io::write_csv_row(out, header);

  double gap_log_price = std::log(50.0);
  bool duplicate_written = !config.add_duplicate_row;

  for (std::size_t k = 0; k < quarters.size(); ++k) {
    const Q& qt = quarters[k];
    const std::vector<chr::sys_days> weeks = fridays_in(qt.year, qt.q);
    const Index w = static_cast<Index>(weeks.size());

    // Weekly log increments summing exactly to the quarter's return. The base quarter
    // only wanders around the starting price and ends on it.
    Eigen::VectorXd quarter_return = Eigen::VectorXd::Zero(p);
    if (k > 0) {
      const bool after_break = qt.year > config.break_year ||
                               (qt.year == config.break_year && qt.q > config.break_quarter);
      const Eigen::VectorXd u = sample_sphere(p, returns_rng);
      const double xi = sample_radial(law, returns_rng);
      quarter_return = (xi * (after_break ? break_sd : 1.0)) * (factor * u);
      quarter_return.array() += kDrift;
    }
    Eigen::MatrixXd steps(w, p);
    for (Index j = 0; j < p; ++j) {
      double mean_noise = 0.0;
      for (Index t = 0; t < w; ++t) mean_noise += (steps(t, j) = noise(noise_rng));
      mean_noise /= static_cast<double>(w);
      for (Index t = 0; t < w; ++t) {
        steps(t, j) += quarter_return(j) / static_cast<double>(w) - mean_noise;
      }
    }
    if (k == 0) {
      // Shift so the last Friday of the base quarter sits exactly on the start price.
      Eigen::VectorXd total = steps.colwise().sum().transpose();
      log_price -= total;
    }

    for (Index t = 0; t < w; ++t) {
      log_price += steps.row(t).transpose();
      gap_log_price += 0.002;
      io::CsvRow row{iso(weeks[static_cast<std::size_t>(t)])};
      for (Index j = 0; j < p; ++j) row.push_back(io::format_double(std::exp(log_price(j))));
      if (config.add_gap_ticker) {
        const bool missing = qt.year == gap_quarter.year && qt.q == gap_quarter.q;
        row.push_back(missing ? std::string() : io::format_double(std::exp(gap_log_price)));
      }
      if (!duplicate_written && k == 1 && t == w / 2) {
        // Stale copy of this date, superseded by the row that follows.
        io::CsvRow stale = row;
        for (std::size_t c = 1; c < stale.size(); ++c) {
          if (!stale[c].empty()) stale[c] = "1";
        }
        io::write_csv_row(out, stale);
        duplicate_written = true;
      }
      io::write_csv_row(out, row);
    }
  }
}

}  // namespace ellcov::sim
