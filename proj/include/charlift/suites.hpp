#ifndef CHARLIFT_SUITES_HPP
#define CHARLIFT_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace charlift {

// One acceptance criterion outcome. Tolerances and budgets are pinned in the
// runner; detail carries the measured extremes.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  bool timeout = false;
  double seconds = 0.0;
  std::string detail;
};

CriterionResult run_criterion(int id, std::uint64_t seed = 20240817);

// Criteria ids grouped by verify suite name:
// contour, upq, lift, chambers, invariants, all.
std::vector<int> criteria_for_suite(const std::string& suite);

inline constexpr int kCriterionCount = 10;

}  // namespace charlift

#endif
