// Runs the twelve acceptance criteria and prints one PASS/FAIL line each,
// followed by its measurements. A criterion also fails when it overruns its
// time budget.

#include <chrono>
#include <cstdio>
#include <exception>
#include <vector>

#include "qccr/checks.hpp"

namespace {

constexpr double kSecondsAllowed[] = {1, 1, 1, 30, 30, 10, 10, 5, 60, 5, 5, 60};

}  // namespace

int main() {
  using namespace qccr::checks;
  int failures = 0;
  for (std::size_t k = 0; k < acceptance_count(); ++k) {
    std::vector<CheckResult> results;
    const auto start = std::chrono::steady_clock::now();
    try {
      run_criterion(k, results);
    } catch (const std::exception& e) {
      std::printf("C%-3zu FAIL  threw: %s\n", k + 1, e.what());
      ++failures;
      continue;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const CheckResult& r = results.front();
    const bool in_time = seconds < kSecondsAllowed[k];
    const bool ok = r.passed() && in_time;
    failures += ok ? 0 : 1;
    std::printf("%-4s %s  %s\n", r.id.c_str(), ok ? "PASS" : "FAIL", r.description.c_str());
    for (const auto& m : r.measurements) {
      std::printf("       %s %-48s measured %.6g %s %.6g (tol %.1g)\n", m.passed ? "ok  " : "FAIL", m.label.c_str(),
                  m.measured, m.relation == Relation::AtMost ? "<=" : ">=", m.bound, m.tolerance);
    }
    std::printf("       %s %-48s %.2f s < %.0f s\n", in_time ? "ok  " : "FAIL", "runtime", seconds, kSecondsAllowed[k]);
  }
  std::printf("%zu of %zu criteria passed\n", acceptance_count() - static_cast<std::size_t>(failures),
              acceptance_count());
  return failures == 0 ? 0 : 1;
}
