#pragma once

#include <string>
#include <vector>

namespace abgup::selftest {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  double value = 0.0;      ///< measured quantity
  double threshold = 0.0;  ///< bound it was compared against
  std::string detail;
};

/// Runs the invariant suite of every module. Each check is independent and
/// a thrown exception counts as a failure of that check only.
std::vector<CheckResult> run_all();

}  // namespace abgup::selftest
