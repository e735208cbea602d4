#pragma once

// Property checks run by the acceptance binary (full sizes) and by
// `oco_bench selftest` (reduced sizes).

#include <functional>
#include <string>
#include <vector>

namespace oco {

enum class AcceptanceScale { Full, Reduced };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Number of criteria evaluated by run_criterion (1..11).
inline constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int id, AcceptanceScale scale);

/// Runs criteria 1..11 in order, reporting each through `on_result`.
std::vector<CriterionResult> run_acceptance(AcceptanceScale scale,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "criterion <id> [<name>]: PASS|FAIL (<detail>)".
std::string format_result(const CriterionResult& result);

}  // namespace oco
