#pragma once

#include <string>
#include <vector>

namespace arbor {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Exact reference values for the degree-4 dihedral construction and the
/// surrounding families, computed through the library. Used by `verify-paper`.
std::vector<CheckResult> reference_checks();

}  // namespace arbor
