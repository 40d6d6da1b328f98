#pragma once

#include <span>
#include <vector>

#include "socband/model.hpp"

// Social surplus u_{k,n}, the marginal decomposition, planner cutoffs,
// surplus-vs-connectivity curves and the complementarity diagnostic.
// Local regime throughout.
namespace socband {

struct SurplusPoint {
  int k = 0;
  int n = 0;
  double value = 0.0;  // total over agents
  double per_capita() const { return value / n; }
};

enum class MarginalRegion {
  LowBelief,        // pi/(1-pi) <= alpha
  HighBeliefLowK,   // band index r with k < r
  Banded,           // k >= r >= 0, the A_k/B_k decomposition
};

struct MarginalDecomposition {
  MarginalRegion region = MarginalRegion::LowBelief;
  int r = 0;        // band index (Banded/HighBeliefLowK)
  double a_k = 0.0; // Banded only
  double b_k = 0.0; // Banded only
  double delta_u = 0.0;
};

struct SurplusJump {
  double lambda_star = 0.0;
  double drop = 0.0;  // surplus change at the regime boundary, negative
  int k = 0;          // explorer count just above lambda_star
};

struct SurplusCurve {
  std::vector<std::pair<double, double>> points;  // (lambda, per-capita)
  std::vector<SurplusJump> jumps;
};

struct ComplementarityReport {
  double min_derivative = 0.0;  // min over k (and the belief grid) of d(Delta u_k)/d pi
  int argmin_k = 0;
  double argmin_pi = 0.0;
  bool bound_holds = false;      // delta * (lambda + 2) <= 1
};

// Exact evaluation of the six-term surplus sum; 0 <= k <= n.
SurplusPoint social_surplus(const ModelParams& params, const NetworkSpec& net,
                            int k);

// Delta u_k = u_{k+1} - u_k by region; 0 <= k <= n-1. In the banded region
// the A_k pmf identity is asserted internally as a consistency check.
MarginalDecomposition marginal_surplus(const ModelParams& params,
                                       const NetworkSpec& net, int k);

// Test hook: evaluates the banded-region decomposition for an explicit band
// index r (k >= r >= 0) regardless of where params.pi sits.
MarginalDecomposition banded_marginal(const ModelParams& params,
                                      const NetworkSpec& net, int k, int r);

// Planner cutoffs pi*_lower, pi*_upper; n = 2 reproduces the two-player
// planner proposition.
std::pair<double, double> planner_cutoffs(const ModelParams& params,
                                          const NetworkSpec& net);

// n -> infinity planner cutoffs at mean degree lambda.
std::pair<double, double> planner_cutoffs_limit(const ModelParams& params,
                                                double lambda);

// Equilibrium per-capita surplus along a lambda grid at fixed pi, with the
// regime-change points located in closed form and each drop checked against
// its closed-form magnitude.
SurplusCurve equilibrium_surplus_curve(const ModelParams& params, int n,
                                       std::span<const double> lambda_grid);

// Closed-form drop of total surplus at the boundary lambda where
// pi = pi_{k,n}: u_{k,n} - u_{k+1,n} evaluated there.
double surplus_drop_closed_form(const ModelParams& params, int n, double p,
                                int k);

// Large-n per-capita equilibrium surplus at mean degree lambda.
double limit_surplus(const ModelParams& params, double lambda);

// lambda(pi): connectivity above which the limiting per-capita surplus is
// flat (solves pi_bar_inf_local(lambda) = pi on the intermediate band).
double flat_region_lambda(const ModelParams& params);

// Asymptotic positive externality of the n-th explorer, lambda beta
// e^{-lambda beta}; the finite-n coupled difference of the same quantity is
// exposed for the convergence check.
double nth_externality_limit(const ModelParams& params, double lambda);
double nth_externality_finite(const ModelParams& params, int n, double lambda);

// Minimum over explorer counts (and the supplied belief grid) of the
// pi-derivative of Delta u_k, with the delta(lambda+2) <= 1 prediction.
ComplementarityReport complementarity_check(const ModelParams& params,
                                            const NetworkSpec& net,
                                            std::span<const double> pi_grid);

}  // namespace socband
