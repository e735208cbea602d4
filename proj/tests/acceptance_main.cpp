// Acceptance suite: one line per criterion, full problem sizes, plus the
// timing check of the reduced suite used by `oco_bench selftest`.

#include "oco/acceptance.hpp"

#include <chrono>
#include <iostream>

int main() {
  using Clock = std::chrono::steady_clock;
  int failures = 0;
  oco::run_acceptance(oco::AcceptanceScale::Full, [&](const oco::CriterionResult& r) {
    std::cout << oco::format_result(r) << std::endl;
    failures += r.passed ? 0 : 1;
  });

  const auto start = Clock::now();
  int reduced_failures = 0, reduced_errors = 0;
  oco::run_acceptance(oco::AcceptanceScale::Reduced, [&](const oco::CriterionResult& r) {
    reduced_failures += r.passed ? 0 : 1;
    reduced_errors += r.detail.rfind("error: ", 0) == 0 ? 1 : 0;
  });
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  const bool fast = seconds < 300.0 && reduced_errors == 0;
  std::cout << "criterion 12 [selftest runtime]: " << (fast ? "PASS" : "FAIL") << " (reduced suite "
            << seconds << " s, " << reduced_errors << " aborted, " << reduced_failures
            << " failed checks; need completion in < 300 s)" << std::endl;
  failures += fast ? 0 : 1;
  return failures == 0 ? 0 : 1;
}
