#pragma once

// Price-panel ingestion: wide CSV of prices -> quarterly log returns -> two samples.

#include "ellcov/data_matrix.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <compare>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ellcov::ingest {

struct Quarter {
  int year = 2000;
  int q = 1;  // 1..4

  static Quarter of(std::chrono::year_month_day date);
  /// Parses "2017Q2" (also "2017-Q2", case-insensitive).
  static Quarter parse(const std::string& label);
  std::string label() const;
  Quarter next() const;
  int ordinal() const { return year * 4 + (q - 1); }

  friend auto operator<=>(const Quarter&, const Quarter&) = default;
};

struct LoadDiagnostics {
  std::size_t rows_read = 0;
  std::size_t dropped_rows = 0;     ///< unparseable date
  std::size_t bad_cells = 0;        ///< non-numeric price
  std::size_t duplicate_dates = 0;  ///< later row replaced an earlier one
  std::map<std::string, std::size_t> coverage;  ///< valid prices per ticker
  std::vector<std::string> messages;
};

/// Wide price panel; prices(d, t) is NaN where ticker t has no price on date d.
struct PricePanel {
  std::vector<std::chrono::sys_days> dates;  ///< strictly increasing
  std::vector<std::string> tickers;
  Eigen::MatrixXd prices;
  LoadDiagnostics diagnostics;
};

/// Parses a header-led CSV with one ISO-8601 (YYYY-MM-DD) date column. value_columns
/// selects tickers; empty means every other column. Duplicate dates: last row wins.
PricePanel parse_prices(std::istream& in, const std::string& date_column,
                        const std::vector<std::string>& value_columns = {});
PricePanel load_prices(const std::string& path, const std::string& date_column,
                       const std::vector<std::string>& value_columns = {});

struct ReturnPanel {
  std::vector<std::string> tickers;
  std::vector<Quarter> quarters;  ///< quarter in which each return ends
  Eigen::MatrixXd returns;        ///< quarters x tickers
  std::vector<std::string> excluded;  ///< tickers without a price in every quarter
};

/// Quarter-end price = last observation in each calendar quarter; r_q = ln(P_q / P_{q-1}).
/// The first quarter of the panel only provides the base price, so T = #quarters - 1.
/// Throws std::domain_error for a nonpositive price (naming ticker and date).
ReturnPanel to_quarterly_log_returns(const PricePanel& panel);

struct SplitSamples {
  DataMatrix first;
  DataMatrix second;
  std::vector<Quarter> first_quarters;
  std::vector<Quarter> second_quarters;
};

/// Returns in [window_start, boundary] form sample 1 and those after the boundary (up to
/// window_end) form sample 2. Column order is preserved. Throws when the boundary is not
/// strictly inside the range or a sample has fewer than 4 rows.
SplitSamples split_periods(const ReturnPanel& panel, Quarter boundary,
                           std::optional<Quarter> window_start = std::nullopt,
                           std::optional<Quarter> window_end = std::nullopt);

/// CSV with a "quarter" first column followed by one column per ticker.
void write_return_panel(std::ostream& out, const ReturnPanel& panel);

}  // namespace ellcov::ingest
