#pragma once

#include "ellcov/data_matrix.hpp"

#include <string>
#include <string_view>

namespace ellcov {

/// Distribution of the squared radius xi^2 of an elliptical vector; every law has E[xi^2] = p.
enum class RadialTag {
  ChiSq,          ///< (i)   chi-square with p degrees of freedom
  BetaPrime,      ///< (ii)  Beta-Prime(p (p + 4) / 3, (p + 7) / 3)
  ScaledBeta,     ///< (iii) (p + 4) Beta(p / 2, 2)
  GammaLaw,       ///< (iv)  Gamma(shape p / 5, rate 1 / 5)
  ScaledGammaSq,  ///< (v)   Gamma(p, 1)^2 / (p + 1)
  FixedRadius,    ///< xi^2 = p exactly; test-only degenerate law
};

struct RadialLaw {
  RadialTag tag = RadialTag::ChiSq;
  Index p = 1;
};

/// Canonical name, e.g. "chisq".
std::string_view radial_name(RadialTag tag);

/// Accepts canonical names and roman numerals "i".."v" (case-insensitive).
RadialTag parse_radial_tag(std::string_view text);

/// E[xi^4] in closed form.
double radial_fourth_moment(const RadialLaw& law);

}  // namespace ellcov
