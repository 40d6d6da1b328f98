#pragma once

#include <vector>

#include "socband/model.hpp"

// Brute-force ground truth for small populations: exact expected payoffs by
// exhaustive enumeration over states, graphs and signal vectors, pure-Nash
// verification, and exact surplus maximization.
namespace socband {

enum class Action { Exploit, Explore };

struct StrategyProfile {
  std::vector<Action> choices;  // first-period action per agent

  int explorer_count() const;
  static StrategyProfile with_explorers(int n, int k);  // first k explore
};

struct OracleResult {
  std::vector<double> payoffs;  // exact expected utility per agent
  bool is_nash = false;
  double surplus = 0.0;  // = sum of payoffs
};

// Populations small enough for full graph enumeration (2^{n(n-1)/2} graphs);
// above it, up to kOraclePmfMaxN, payoffs come from per-agent enumeration over
// the exact observation pmf instead.
inline constexpr int kOracleEnumMaxN = 6;
inline constexpr int kOraclePmfMaxN = 10;

// Exact expected utilities under the profile: enumerates theta, every graph
// realization and every first-period signal vector, with each agent playing
// the optimal second-period cutoff rule (ties toward the safe arm). is_nash
// is left false; use verify_nash.
OracleResult exact_payoffs(const ModelParams& params, const NetworkSpec& net,
                           const StrategyProfile& profile);

// True iff no unilateral first-period deviation helps: explorers must
// strictly prefer exploring, exploiters weakly prefer exploiting.
bool verify_nash(const ModelParams& params, const NetworkSpec& net,
                 const StrategyProfile& profile);

// argmax over k of the exact total surplus, ties resolved to the smaller k.
std::pair<int, double> exact_optimum(const ModelParams& params,
                                     const NetworkSpec& net);

}  // namespace socband
