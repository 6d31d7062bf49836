#pragma once

#include "ellcov/scenario.hpp"

#include <istream>
#include <string>
#include <vector>

namespace ellcov::sim {

/// Stanza-based scenario file:
///
///   # comment
///   [bulk-chisq-null]
///   n1 = 300
///   covariance = a
///   radial = i          # sets radial1 and radial2
///
/// Keys match ScenarioConfig fields. Keys before the first stanza header set defaults for
/// every stanza. Throws std::invalid_argument naming the line on any error.
std::vector<ScenarioConfig> parse_scenarios(std::istream& in);
std::vector<ScenarioConfig> load_scenarios(const std::string& path);

/// Applies one key = value assignment to a config.
void apply_scenario_key(ScenarioConfig& config, const std::string& key, const std::string& value);

}  // namespace ellcov::sim
