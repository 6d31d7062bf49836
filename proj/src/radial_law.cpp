#include "ellcov/radial_law.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

namespace ellcov {

std::string_view radial_name(RadialTag tag) {
  switch (tag) {
    case RadialTag::ChiSq: return "chisq";
    case RadialTag::BetaPrime: return "betaprime";
    case RadialTag::ScaledBeta: return "scaledbeta";
    case RadialTag::GammaLaw: return "gamma";
    case RadialTag::ScaledGammaSq: return "gammasq";
    case RadialTag::FixedRadius: return "fixed";
  }
  return "unknown";
}

RadialTag parse_radial_tag(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "chisq" || s == "i" || s == "normal") return RadialTag::ChiSq;
  if (s == "betaprime" || s == "ii") return RadialTag::BetaPrime;
  if (s == "scaledbeta" || s == "iii") return RadialTag::ScaledBeta;
  if (s == "gamma" || s == "iv") return RadialTag::GammaLaw;
  if (s == "gammasq" || s == "v") return RadialTag::ScaledGammaSq;
  if (s == "fixed") return RadialTag::FixedRadius;
  throw std::invalid_argument("unknown radial law '" + std::string(text) + "'");
}

double radial_fourth_moment(const RadialLaw& law) {
  const double p = static_cast<double>(law.p);
  switch (law.tag) {
    case RadialTag::ChiSq: return p * (p + 2.0);
    case RadialTag::BetaPrime: {
      const double a = p * (p + 4.0) / 3.0;
      const double b = (p + 7.0) / 3.0;
      return a * (a + 1.0) / ((b - 1.0) * (b - 2.0));
    }
    case RadialTag::ScaledBeta: return p * (p + 2.0) * (p + 4.0) / (p + 6.0);
    case RadialTag::GammaLaw: return p * (p + 5.0);
    case RadialTag::ScaledGammaSq: return p * (p + 2.0) * (p + 3.0) / (p + 1.0);
    case RadialTag::FixedRadius: return p * p;
  }
  throw std::invalid_argument("unsupported radial law");
}

}  // namespace ellcov
