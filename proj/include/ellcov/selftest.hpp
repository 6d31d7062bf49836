#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ellcov {

struct SelftestOptions {
  int oracle_instances = 60;
  long moment_replicates = 20000;
  /// Test hook: added (relative) to the fast-path estimates before comparison with the
  /// brute-force oracle, to confirm that the suite detects a broken identity.
  double gram_perturbation = 0.0;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<SuiteResult> run_selftest(const SelftestOptions& options, std::ostream& log);

}  // namespace ellcov
