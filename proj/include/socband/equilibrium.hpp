#pragma once

#include <optional>
#include <vector>

#include "socband/model.hpp"

// Threshold ladder, equilibrium-region classification, limiting explorer
// fraction and the symmetric mixed-strategy fixed point.
namespace socband {

struct ThresholdSet {
  double pi_lower = 0.0;  // exploitation boundary, = ladder[0]
  double pi_bar = 0.0;    // exploration boundary, = ladder[n-1]
  std::vector<double> ladder;      // pi_{k,n}, k = 0 .. n-1
  std::vector<double> ladder_se;   // standard errors when Monte Carlo backed
  std::optional<double> pi_star_lower;  // planner cutoffs (surplus module)
  std::optional<double> pi_star_upper;
};

enum class Region { FullExploit, Asymmetric, FullExplore };

struct EquilibriumReport {
  Region region = Region::FullExploit;
  int k = 0;  // equilibrium explorer count
  std::optional<double> mu;  // mixed probability, asymmetric region only
};

struct MixedEquilibrium {
  double mu = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Budget for the global regime above kGlobalExactMaxN.
struct LadderOptions {
  std::int64_t mc_reps = 0;  // 0 means "exact or error"
  std::uint64_t seed = 0xB0BA;
};

// Two-player cutoffs; p = 1 recovers the perfect-connection beta(1-beta)
// form.
std::pair<double, double> two_player_thresholds(const ModelParams& params,
                                                double p);

// pi_{k,n} = alpha(1-delta) / ((1+alpha)(1-delta) + delta beta E_k[(1-beta)^M]).
ThresholdSet threshold_ladder(const ModelParams& params, const NetworkSpec& net,
                              const LadderOptions& options = {});

// Region per the half-open convention: k explorers on (pi_{k-1,n}, pi_{k,n}].
EquilibriumReport classify(const ModelParams& params, const NetworkSpec& net);

// O(1) logarithm form of the equilibrium explorer count; local regime only.
int equilibrium_count(const ModelParams& params, const NetworkSpec& net);

// Limiting fraction of explorers as n grows with mean degree lambda fixed.
double kappa(const ModelParams& params, double lambda);

// Unique symmetric mixed equilibrium on the intermediate belief region,
// found by bisection on the monotone fixed-point residual.
MixedEquilibrium mixed_equilibrium(const ModelParams& params,
                                   const NetworkSpec& net);

// Residual of the mixed-equilibrium condition at mixing probability mu
// (exposed for tests of monotonicity).
double mixed_equilibrium_residual(const ModelParams& params,
                                  const NetworkSpec& net, double mu);

}  // namespace socband
