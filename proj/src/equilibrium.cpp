#include "socband/equilibrium.hpp"

#include <cmath>

#include "socband/netsim.hpp"

namespace socband {

namespace {

double threshold_from_decay(const ModelParams& params, double decay) {
  const double base = (1.0 + params.alpha) * (1.0 - params.delta);
  return params.alpha * (1.0 - params.delta) /
         (base + params.delta * params.beta * decay);
}

// Half-open convention: pi counts as "at most the threshold" up to the
// relative guard.
bool at_most(double pi, double threshold) {
  return pi <= threshold * (1.0 + kBoundaryGuard);
}

}  // namespace

std::pair<double, double> two_player_thresholds(const ModelParams& params,
                                                double p) {
  params.validate();
  if (!(p >= 0.0) || !(p <= 1.0))
    throw std::invalid_argument("p must lie in [0,1]");
  const double lower = threshold_from_decay(params, 1.0);
  const double upper = threshold_from_decay(params, 1.0 - p * params.beta);
  return {lower, upper};
}

ThresholdSet threshold_ladder(const ModelParams& params, const NetworkSpec& net,
                              const LadderOptions& options) {
  params.validate();
  net.validate();
  ThresholdSet set;
  set.ladder.resize(static_cast<size_t>(net.n));
  const bool needs_mc =
      net.regime == Regime::Global && net.n > kGlobalExactMaxN;
  if (needs_mc && options.mc_reps < 2)
    throw std::domain_error(
        "global regime with n > " + std::to_string(kGlobalExactMaxN) +
        ": estimate required, pass a Monte Carlo budget (mc_reps)");
  if (needs_mc) set.ladder_se.resize(static_cast<size_t>(net.n));
  for (int k = 0; k < net.n; ++k) {
    double decay;
    if (needs_mc) {
      const McEstimate est = estimate_expectation(
          net.n, net.p, k, net.regime, params.beta, /*agent_explores=*/false,
          options.mc_reps, options.seed + static_cast<std::uint64_t>(k));
      decay = est.mean;
      set.ladder_se[static_cast<size_t>(k)] = est.std_error;
    } else {
      decay = decay_expectation(net, k, params.beta);
    }
    set.ladder[static_cast<size_t>(k)] = threshold_from_decay(params, decay);
  }
  set.pi_lower = set.ladder.front();
  set.pi_bar = set.ladder.back();
  return set;
}

EquilibriumReport classify(const ModelParams& params, const NetworkSpec& net) {
  const ThresholdSet set = threshold_ladder(params, net);
  EquilibriumReport report;
  int k = 0;
  while (k < net.n && !at_most(params.pi, set.ladder[static_cast<size_t>(k)]))
    ++k;
  report.k = k;
  if (k == 0) {
    report.region = Region::FullExploit;
  } else if (k == net.n) {
    report.region = Region::FullExplore;
  } else {
    report.region = Region::Asymmetric;
    report.mu = mixed_equilibrium(params, net).mu;
  }
  return report;
}

int equilibrium_count(const ModelParams& params, const NetworkSpec& net) {
  params.validate();
  net.validate();
  if (net.regime != Regime::Local)
    throw std::domain_error(
        "equilibrium_count is defined for the local regime only; use classify");
  const double pi = params.pi;
  const double pbeta = net.p * params.beta;
  auto pi_k = [&](int k) {
    return threshold_from_decay(params, std::pow(1.0 - pbeta, k));
  };
  if (at_most(pi, pi_k(0))) return 0;
  if (!at_most(pi, pi_k(net.n - 1))) return net.n;
  const double target = (1.0 - params.delta) *
                        (params.alpha * (1.0 - pi) - pi) /
                        (params.delta * pi * params.beta);
  // target equals (1-p beta)^k at the boundary; solve and settle the
  // guard-adjacent candidates explicitly.
  const double raw = std::log(target) / std::log(1.0 - pbeta);
  int k = static_cast<int>(std::ceil(raw)) - 1;
  k = std::max(0, std::min(net.n - 1, k));
  while (k < net.n && !at_most(pi, pi_k(k))) ++k;
  while (k > 0 && at_most(pi, pi_k(k - 1))) --k;
  return k;
}

double kappa(const ModelParams& params, double lambda) {
  params.validate();
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const double pi = params.pi;
  const double pi_lower = threshold_from_decay(params, 1.0);
  const double pi_bar_inf =
      threshold_from_decay(params, std::exp(-lambda * params.beta));
  if (at_most(pi, pi_lower)) return 0.0;
  if (!at_most(pi, pi_bar_inf)) return 1.0;
  const double value =
      std::log(params.delta * pi * params.beta /
               ((1.0 - params.delta) * (params.alpha * (1.0 - pi) - pi))) /
      (lambda * params.beta);
  return std::min(1.0, std::max(0.0, value));
}

double mixed_equilibrium_residual(const ModelParams& params,
                                  const NetworkSpec& net, double mu) {
  const int n = net.n;
  std::vector<double> gammas(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    gammas[static_cast<size_t>(k)] = gamma_k(params, net, k);
  // Binomial(n-1, mu) weights by the multiplicative recursion.
  double expectation = 0.0;
  if (mu <= 0.0) {
    expectation = gammas[0];
  } else if (mu >= 1.0) {
    expectation = gammas[static_cast<size_t>(n - 1)];
  } else {
    double weight = std::pow(1.0 - mu, n - 1);
    const double ratio = mu / (1.0 - mu);
    for (int k = 0; k < n; ++k) {
      expectation += weight * gammas[static_cast<size_t>(k)];
      weight *= ratio * (n - 1 - k) / (k + 1);
    }
  }
  const double target =
      (1.0 - params.delta) * (params.pi - params.alpha * (1.0 - params.pi)) /
      (params.delta * params.pi);
  return expectation - target;
}

MixedEquilibrium mixed_equilibrium(const ModelParams& params,
                                   const NetworkSpec& net) {
  params.validate();
  net.validate();
  const ThresholdSet set = threshold_ladder(params, net);
  if (at_most(params.pi, set.pi_lower) || !at_most(params.pi, set.pi_bar))
    throw std::domain_error(
        "no interior mixed equilibrium: pi outside (pi_lower, pi_bar]");
  double lo = 0.0, hi = 1.0;
  MixedEquilibrium result;
  // Residual is strictly increasing in mu (Gamma_k nondecreasing plus
  // Binomial stochastic dominance), so the bracket is valid.
  for (result.iterations = 0;
       result.iterations < 200 && hi - lo > 1e-12; ++result.iterations) {
    const double mid = 0.5 * (lo + hi);
    if (mixed_equilibrium_residual(params, net, mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  result.mu = 0.5 * (lo + hi);
  result.residual = mixed_equilibrium_residual(params, net, result.mu);
  return result;
}

}  // namespace socband
