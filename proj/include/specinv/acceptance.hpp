#pragma once

#include <string>
#include <vector>

namespace specinv {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;  // first failure, or a one-line summary when passing
};

/// Runs the acceptance criteria whose names contain `filter` (empty = all).
/// Each criterion is hermetic; order is by id.
std::vector<CriterionResult> run_acceptance(const std::string& filter = "");

}  // namespace specinv
