#include "ellcov/scenario_config.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace ellcov::sim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument("invalid value '" + value + "' for key '" + key + "'");
  }
  return out;
}

Index parse_count(const std::string& key, const std::string& value) {
  const long long v = parse_number<long long>(key, value);
  if (v < 0) throw std::invalid_argument("key '" + key + "' must be nonnegative");
  return static_cast<Index>(v);
}

}  // namespace

void apply_scenario_key(ScenarioConfig& c, const std::string& key, const std::string& value) {
  if (key == "name") c.name = value;
  else if (key == "n1") c.n1 = parse_count(key, value);
  else if (key == "n2") c.n2 = parse_count(key, value);
  else if (key == "n") c.n1 = c.n2 = parse_count(key, value);
  else if (key == "p") c.p = parse_count(key, value);
  else if (key == "radial") c.radial1 = c.radial2 = parse_radial_tag(value);
  else if (key == "radial1") c.radial1 = parse_radial_tag(value);
  else if (key == "radial2") c.radial2 = parse_radial_tag(value);
  else if (key == "covariance") c.covariance = parse_covariance_case(value);
  else if (key == "rho") c.rho = parse_number<double>(key, value);
  else if (key == "delta") c.delta = parse_number<double>(key, value);
  else if (key == "scale2") c.scale2 = parse_number<double>(key, value);
  else if (key == "mean1") c.mean1 = parse_number<double>(key, value);
  else if (key == "mean2") c.mean2 = parse_number<double>(key, value);
  else if (key == "replicates") c.replicates = parse_count(key, value);
  else if (key == "alpha") c.alpha = parse_number<double>(key, value);
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "nu3") c.nu3_1 = c.nu3_2 = parse_number<double>(key, value);
  else if (key == "nu3_1") c.nu3_1 = parse_number<double>(key, value);
  else if (key == "nu3_2") c.nu3_2 = parse_number<double>(key, value);
  else throw std::invalid_argument("unknown key '" + key + "'");
}

std::vector<ScenarioConfig> parse_scenarios(std::istream& in) {
  ScenarioConfig defaults;
  std::vector<ScenarioConfig> out;
  ScenarioConfig* current = &defaults;
  std::string line;
  int lineno = 0;
  auto where = [&lineno](const std::string& msg) {
    return std::invalid_argument("scenario config line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw where("unterminated stanza header");
      out.push_back(defaults);
      out.back().name = trim(line.substr(1, line.size() - 2));
      if (out.back().name.empty()) throw where("empty stanza name");
      current = &out.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw where("expected key = value");
    try {
      apply_scenario_key(*current, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw where(e.what());
    }
  }
  if (out.empty()) throw std::invalid_argument("scenario config contains no [stanza]");
  for (const auto& c : out) c.validate();
  return out;
}

std::vector<ScenarioConfig> load_scenarios(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario config '" + path + "'");
  return parse_scenarios(in);
}

}  // namespace ellcov::sim
