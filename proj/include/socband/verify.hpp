#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Self-contained verification suites: each check pits an independent
// evaluation route (enumeration oracle, Monte Carlo, finite differences)
// against the closed forms and reports a machine-readable verdict.
namespace socband {

enum class CheckStatus { Pass, Fail, Inconclusive };

struct CheckResult {
  std::string id;
  std::string params;   // key=value description of the evaluation point
  double max_abs_err = 0.0;
  CheckStatus status = CheckStatus::Pass;
};

struct VerifyOptions {
  std::int64_t reps = 100000;  // Monte Carlo budget
  std::uint64_t seed = 0xB0BA;
  bool corrupt_b_k = false;  // negative control: perturb B_k before checking
};

// suite in {oracle, inequalities, asymptotics, montecarlo, complementarity}.
// Throws std::invalid_argument for an unknown suite name.
std::vector<CheckResult> run_suite(const std::string& suite,
                                   const VerifyOptions& options);

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (r.status == CheckStatus::Fail) return false;
  return true;
}

}  // namespace socband
