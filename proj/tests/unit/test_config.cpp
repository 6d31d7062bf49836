#include "ellcov/scenario_config.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace ellcov::sim {
namespace {

std::vector<ScenarioConfig> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_scenarios(in);
}

TEST(ScenarioConfigFile, DefaultsAndStanzas) {
  const auto v = parse(R"(# shared
n = 50
p = 40
replicates = 20

[first]
covariance = b   # Toeplitz
rho = 0.5
radial = iii

[second]
covariance = spiked
delta = 0.2
radial1 = gamma
radial2 = v
seed = 18446744073709551615
)");
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].name, "first");
  EXPECT_EQ(v[0].n1, 50);
  EXPECT_EQ(v[0].n2, 50);
  EXPECT_EQ(v[0].covariance, CovarianceCase::Toeplitz);
  EXPECT_EQ(v[0].rho, 0.5);
  EXPECT_EQ(v[0].radial1, RadialTag::ScaledBeta);
  EXPECT_EQ(v[0].radial2, RadialTag::ScaledBeta);
  EXPECT_EQ(v[1].rho, kDefaultToeplitzRho);
  EXPECT_EQ(v[1].radial1, RadialTag::GammaLaw);
  EXPECT_EQ(v[1].radial2, RadialTag::ScaledGammaSq);
  EXPECT_EQ(v[1].replicates, 20);
  EXPECT_EQ(v[1].seed, 18446744073709551615ULL);
}

TEST(ScenarioConfigFile, ZeroReplicatesRejectedAtParseTime) {
  EXPECT_THROW(parse("[a]\nreplicates = 0\n"), std::invalid_argument);
}

TEST(ScenarioConfigFile, ErrorsNameTheLine) {
  try {
    parse("[a]\n\nbogus = 1\n");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse("[a]\np = ten\n"), std::invalid_argument);
  EXPECT_THROW(parse("[a\n"), std::invalid_argument);
  EXPECT_THROW(parse("p = 10\n"), std::invalid_argument);
  EXPECT_THROW(parse("[a]\nno equals sign\n"), std::invalid_argument);
  EXPECT_THROW(parse("[a]\np = 7\ncovariance = a\n"), std::invalid_argument);  // odd p
}

TEST(ScenarioConfigFile, MissingFile) {
  EXPECT_THROW(load_scenarios("/nonexistent/ellcov.conf"), std::runtime_error);
}

}  // namespace
}  // namespace ellcov::sim
