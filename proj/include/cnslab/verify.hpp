#pragma once

#include <string>
#include <vector>

namespace cnslab {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// "lp", "helmholtz", "energy", "decay".
std::vector<std::string> verify_suites();
/// Runs one suite or "all"; ConfigError for an unknown name.
std::vector<CheckResult> run_verify(const std::string& suite);

}  // namespace cnslab
