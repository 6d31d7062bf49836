#pragma once

#include "ellcov/data_matrix.hpp"
#include "ellcov/radial_law.hpp"

#include <cstdint>
#include <ostream>

namespace ellcov::sim {

/// Weekly (Friday) price panel whose quarterly log returns are i.i.d. elliptical within
/// each regime. Quarters after `break_after` have covariance break_scale * S.
struct PanelSynthesisConfig {
  Index tickers = 40;
  int first_year = 2010;       ///< first return quarter is first_year Q1
  int last_year = 2022;        ///< last return quarter is last_year Q4
  int break_year = 2017;       ///< regime switches after break_year Q(break_quarter)
  int break_quarter = 2;
  double break_scale = 1.0;    ///< 1 means no break
  RadialTag radial = RadialTag::BetaPrime;
  bool add_gap_ticker = true;   ///< one extra ticker missing an entire quarter
  bool add_duplicate_row = true;
  std::uint64_t seed = 7;
};

void write_synthetic_price_panel(std::ostream& out, const PanelSynthesisConfig& config);

}  // namespace ellcov::sim
