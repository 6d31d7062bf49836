#include "ellcov/ingest.hpp"

#include "ellcov/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace ellcov::ingest {

namespace chr = std::chrono;

Quarter Quarter::of(chr::year_month_day date) {
  const unsigned m = static_cast<unsigned>(date.month());
  return Quarter{static_cast<int>(date.year()), static_cast<int>((m - 1) / 3 + 1)};
}

Quarter Quarter::parse(const std::string& label) {
  std::string s;
  for (char c : label) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  const auto qpos = s.find_first_of("qQ");
  if (qpos == std::string::npos || qpos + 2 != s.size()) {
    throw std::invalid_argument("invalid quarter label '" + label + "' (expected e.g. 2017Q2)");
  }
  std::string year_part = s.substr(0, qpos);
  if (!year_part.empty() && year_part.back() == '-') year_part.pop_back();
  int year = 0;
  const auto [ptr, ec] =
      std::from_chars(year_part.data(), year_part.data() + year_part.size(), year);
  const int q = s.back() - '0';
  if (ec != std::errc() || ptr != year_part.data() + year_part.size() || year_part.size() != 4 ||
      q < 1 || q > 4) {
    throw std::invalid_argument("invalid quarter label '" + label + "' (expected e.g. 2017Q2)");
  }
  return Quarter{year, q};
}

std::string Quarter::label() const { return std::to_string(year) + "Q" + std::to_string(q); }

Quarter Quarter::next() const { return q == 4 ? Quarter{year + 1, 1} : Quarter{year, q + 1}; }

namespace {

std::optional<chr::sys_days> parse_iso_date(const std::string& text) {
  std::size_t b = text.find_first_not_of(" \t");
  std::size_t e = text.find_last_not_of(" \t");
  if (b == std::string::npos) return std::nullopt;
  const std::string s = text.substr(b, e - b + 1);
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  auto num = [&](std::size_t pos, std::size_t len, auto& out) {
    const auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, out);
    return ec == std::errc() && ptr == s.data() + pos + len;
  };
  if (!num(0, 4, y) || !num(5, 2, m) || !num(8, 2, d)) return std::nullopt;
  const chr::year_month_day ymd{chr::year{y}, chr::month{m}, chr::day{d}};
  if (!ymd.ok()) return std::nullopt;
  return chr::sys_days{ymd};
}

std::optional<double> parse_price(const std::string& text) {
  std::size_t b = text.find_first_not_of(" \t");
  std::size_t e = text.find_last_not_of(" \t");
  if (b == std::string::npos) return std::nullopt;
  const char* first = text.data() + b;
  const char* last = text.data() + e + 1;
  if (*first == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

bool is_missing_marker(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return t.empty() || t == "na" || t == "nan" || t == "null";
}

std::string format_date(chr::sys_days d) {
  const chr::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

}  // namespace

PricePanel parse_prices(std::istream& in, const std::string& date_column,
                        const std::vector<std::string>& value_columns) {
  const std::vector<io::CsvRow> rows = io::read_csv(in);
  if (rows.empty()) throw std::runtime_error("price file is empty");
  const io::CsvRow& header = rows.front();

  const auto date_it = std::find(header.begin(), header.end(), date_column);
  if (date_it == header.end()) {
    throw std::runtime_error("date column '" + date_column + "' not found in header");
  }
  const std::size_t date_idx = static_cast<std::size_t>(date_it - header.begin());

  PricePanel panel;
  std::vector<std::size_t> cols;
  if (value_columns.empty()) {
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (j == date_idx) continue;
      cols.push_back(j);
      panel.tickers.push_back(header[j]);
    }
  } else {
    for (const auto& name : value_columns) {
      const auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end()) throw std::runtime_error("column '" + name + "' not found in header");
      cols.push_back(static_cast<std::size_t>(it - header.begin()));
      panel.tickers.push_back(name);
    }
  }
  if (cols.empty()) throw std::runtime_error("price file has no value columns");

  LoadDiagnostics& diag = panel.diagnostics;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::map<chr::sys_days, std::vector<double>> by_date;

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const io::CsvRow& row = rows[r];
    ++diag.rows_read;
    const std::string line = "line " + std::to_string(r + 1);
    const auto date = date_idx < row.size() ? parse_iso_date(row[date_idx]) : std::nullopt;
    if (!date) {
      ++diag.dropped_rows;
      diag.messages.push_back(line + ": unparseable date '" +
                              (date_idx < row.size() ? row[date_idx] : std::string()) +
                              "', row dropped");
      continue;
    }
    std::vector<double> values(cols.size(), nan);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] >= row.size() || is_missing_marker(row[cols[k]])) continue;
      if (const auto v = parse_price(row[cols[k]])) {
        values[k] = *v;
      } else {
        ++diag.bad_cells;
        diag.messages.push_back(line + ": non-numeric price '" + row[cols[k]] + "' for " +
                                panel.tickers[k]);
      }
    }
    auto [it, inserted] = by_date.try_emplace(*date, values);
    if (!inserted) {
      ++diag.duplicate_dates;
      diag.messages.push_back(line + ": duplicate date " + format_date(*date) +
                              " replaces an earlier row");
      it->second = std::move(values);
    }
  }
  if (by_date.empty()) throw std::runtime_error("price file has no usable rows");

  panel.prices.resize(static_cast<Eigen::Index>(by_date.size()),
                      static_cast<Eigen::Index>(cols.size()));
  Eigen::Index i = 0;
  for (const auto& [date, values] : by_date) {
    panel.dates.push_back(date);
    for (std::size_t k = 0; k < values.size(); ++k) {
      panel.prices(i, static_cast<Eigen::Index>(k)) = values[k];
    }
    ++i;
  }
  for (std::size_t k = 0; k < cols.size(); ++k) {
    diag.coverage[panel.tickers[k]] = static_cast<std::size_t>(
        panel.prices.col(static_cast<Eigen::Index>(k)).array().isFinite().count());
  }
  return panel;
}

PricePanel load_prices(const std::string& path, const std::string& date_column,
                       const std::vector<std::string>& value_columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_prices(in, date_column, value_columns);
}

ReturnPanel to_quarterly_log_returns(const PricePanel& panel) {
  if (panel.dates.empty()) throw std::invalid_argument("price panel has no dates");
  const Quarter first = Quarter::of(chr::year_month_day{panel.dates.front()});
  const Quarter last = Quarter::of(chr::year_month_day{panel.dates.back()});
  const int nq = last.ordinal() - first.ordinal() + 1;
  if (nq < 2) {
    throw std::invalid_argument("price panel spans a single quarter; need at least two");
  }

  std::vector<int> quarter_of(panel.dates.size());
  for (std::size_t d = 0; d < panel.dates.size(); ++d) {
    quarter_of[d] = Quarter::of(chr::year_month_day{panel.dates[d]}).ordinal() - first.ordinal();
  }

  ReturnPanel out;
  std::vector<Eigen::VectorXd> kept;
  for (Eigen::Index t = 0; t < panel.prices.cols(); ++t) {
    const std::string& ticker = panel.tickers[static_cast<std::size_t>(t)];
    Eigen::VectorXd quarter_end = Eigen::VectorXd::Constant(nq, std::nan(""));
    for (std::size_t d = 0; d < panel.dates.size(); ++d) {
      const double price = panel.prices(static_cast<Eigen::Index>(d), t);
      if (!std::isfinite(price)) continue;
      if (price <= 0.0) {
        throw std::domain_error("nonpositive price " + io::format_double(price) + " for " +
                                ticker + " on " + format_date(panel.dates[d]));
      }
      quarter_end(quarter_of[d]) = price;  // dates ascend, so the last one wins
    }
    if (!quarter_end.array().isFinite().all()) {
      out.excluded.push_back(ticker);
      continue;
    }
    Eigen::VectorXd r(nq - 1);
    for (int q = 1; q < nq; ++q) r(q - 1) = std::log(quarter_end(q) / quarter_end(q - 1));
    out.tickers.push_back(ticker);
    kept.push_back(std::move(r));
  }

  Quarter q = first.next();
  for (int k = 1; k < nq; ++k, q = q.next()) out.quarters.push_back(q);
  out.returns.resize(nq - 1, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) {
    out.returns.col(static_cast<Eigen::Index>(j)) = kept[j];
  }
  return out;
}

SplitSamples split_periods(const ReturnPanel& panel, Quarter boundary,
                           std::optional<Quarter> window_start,
                           std::optional<Quarter> window_end) {
  if (panel.quarters.empty()) throw std::invalid_argument("return panel has no quarters");
  if (panel.tickers.empty()) throw std::invalid_argument("return panel has no complete tickers");
  const Quarter lo = window_start.value_or(panel.quarters.front());
  const Quarter hi = window_end.value_or(panel.quarters.back());
  if (lo < panel.quarters.front() || hi > panel.quarters.back() || !(lo < hi)) {
    throw std::invalid_argument("window " + lo.label() + ".." + hi.label() +
                                " is outside the panel range " + panel.quarters.front().label() +
                                ".." + panel.quarters.back().label());
  }
  if (boundary < lo || !(boundary < hi)) {
    throw std::invalid_argument("boundary " + boundary.label() + " is not strictly inside " +
                                lo.label() + ".." + hi.label());
  }

  std::vector<Eigen::Index> rows1, rows2;
  SplitSamples out;
  for (std::size_t i = 0; i < panel.quarters.size(); ++i) {
    const Quarter& q = panel.quarters[i];
    if (q < lo || q > hi) continue;
    if (q <= boundary) {
      rows1.push_back(static_cast<Eigen::Index>(i));
      out.first_quarters.push_back(q);
    } else {
      rows2.push_back(static_cast<Eigen::Index>(i));
      out.second_quarters.push_back(q);
    }
  }
  if (rows1.size() < 4 || rows2.size() < 4) {
    throw std::invalid_argument("split at " + boundary.label() + " gives n1 = " +
                                std::to_string(rows1.size()) + ", n2 = " +
                                std::to_string(rows2.size()) + "; each sample needs at least 4");
  }
  auto take = [&](const std::vector<Eigen::Index>& rows) {
    RowMatrix m(static_cast<Eigen::Index>(rows.size()), panel.returns.cols());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      m.row(static_cast<Eigen::Index>(k)) = panel.returns.row(rows[k]);
    }
    return DataMatrix(std::move(m));
  };
  out.first = take(rows1);
  out.second = take(rows2);
  return out;
}

void write_return_panel(std::ostream& out, const ReturnPanel& panel) {
  io::CsvRow header{"quarter"};
  header.insert(header.end(), panel.tickers.begin(), panel.tickers.end());
  io::write_csv_row(out, header);
  for (std::size_t i = 0; i < panel.quarters.size(); ++i) {
    io::CsvRow row{panel.quarters[i].label()};
    for (Eigen::Index j = 0; j < panel.returns.cols(); ++j) {
      row.push_back(io::format_double(panel.returns(static_cast<Eigen::Index>(i), j)));
    }
    io::write_csv_row(out, row);
  }
}

}  // namespace ellcov::ingest
