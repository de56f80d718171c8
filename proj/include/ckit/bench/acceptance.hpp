#pragma once

#include <string>
#include <vector>

namespace ckit {

struct CheckLine {
  std::string label;
  double measured = 0;
  double bound = 0;
  bool pass = false;
  double margin() const { return bound - measured; }
};

struct SuiteReport {
  std::string name;
  std::vector<CheckLine> lines;
  double seconds = 0;
  double time_limit = 0;  // seconds

  bool pass() const;
  // Largest measured/bound over the lines with a positive bound.
  double worst_ratio() const;
};

const std::vector<std::string>& acceptance_suites();

// Runs one suite. Unknown names raise ConfigError listing the valid ones.
SuiteReport check_acceptance(const std::string& suite);

std::string format_report(const SuiteReport& r, bool verbose);

}  // namespace ckit
