#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Two-period social bandit on random networks: primitive types, Bayesian
// updating and the closed-form payoff functions v_k, w_k.
namespace socband {

// Preference/technology primitives shared by every agent.
//
// The risky arm pays 1 on success and -alpha on failure; success happens with
// probability beta conditional on the good state, never in the bad state.
// pi is the common prior on the good state, delta the weight on the second
// period.
struct ModelParams {
  double alpha = 1.0;
  double beta = 0.3;
  double delta = 0.15;
  double pi = 0.5;

  void validate() const;

  // Myopic indifference belief alpha/(1+alpha): the posterior above which the
  // risky arm beats the safe arm in a single period.
  double myopic_cutoff() const { return alpha / (1.0 + alpha); }
};

// What an agent gets to see at the start of the second period.
enum class Regime {
  Local,   // outcomes of immediate neighbors
  Global,  // outcomes of everyone in her connected component
};

// Erdos-Renyi connection structure: n agents, each unordered pair linked
// independently with probability p (= lambda/n for mean degree lambda).
struct NetworkSpec {
  int n = 2;
  double p = 1.0;
  Regime regime = Regime::Local;

  void validate() const;
  double lambda() const { return static_cast<double>(n) * p; }
  static NetworkSpec from_lambda(int n, double lambda, Regime regime);
};

struct ObservationCount {
  int m = 0;    // observed explorer signals
  int ell = 0;  // high realizations among them

  void validate() const;
};

// Largest n for which exact global-regime expectations are computed through
// the connected-graph probability recursion; beyond it callers must fall back
// to Monte Carlo (netsim).
inline constexpr int kGlobalExactMaxN = 30;

// Relative guard used whenever a belief is compared against an exact
// threshold, so boundary inputs classify deterministically.
inline constexpr double kBoundaryGuard = 1e-12;

// Posterior P(theta=1 | ell high signals out of m observed). A single high
// signal is conclusive.
double posterior(const ModelParams& params, const ObservationCount& obs);

// Second-period value max{pi~ - alpha(1 - pi~), 0} of acting optimally under
// posterior pi~.
double second_period_value(double posterior, double alpha);

// pmf of M, the number of observable explorers, when `marked` of the other
// n-1 agents explore. Local regime: M ~ Bin(marked, p). Global regime: exact
// mixture of hypergeometrics over the component-size law (n <= kGlobalExactMaxN).
std::vector<double> observation_pmf(const NetworkSpec& net, int marked);

// E[(1-beta)^M] with `marked` observable explorers among the other n-1
// agents. Closed form (1 - p*beta)^marked in the local regime.
double decay_expectation(const NetworkSpec& net, int marked, double beta);

// Expected payoff of an exploiting agent when k of the others explore,
// equation-exact over the finite observation distribution. 0 <= k <= n-1.
double payoff_w(const ModelParams& params, const NetworkSpec& net, int k);

// Expected payoff of an exploring agent when k agents explore in total
// (herself included). 1 <= k <= n.
double payoff_v(const ModelParams& params, const NetworkSpec& net, int k);

// Increment Gamma_k = E_k[(1-beta)^{M+1}] - E_k[(1-beta)^M]
// = -beta E_k[(1-beta)^M], the slope object of the mixed-equilibrium fixed
// point. Nondecreasing in k on exchangeable graphs; Gamma_0 = -beta.
double gamma_k(const ModelParams& params, const NetworkSpec& net, int k);

// Positive part with the deterministic boundary guard: values within
// kBoundaryGuard (relative) of zero collapse to zero.
double guarded_positive(double x, double scale);

}  // namespace socband
