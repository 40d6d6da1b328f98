// End-to-end acceptance run: eleven independent checks, one line each.
// Exits nonzero if any check fails.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "socband/asymptotics.hpp"
#include "socband/equilibrium.hpp"
#include "socband/model.hpp"
#include "socband/netsim.hpp"
#include "socband/oracle.hpp"
#include "socband/surplus.hpp"
#include "socband/verify.hpp"

using namespace socband;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& text) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id,
              text.c_str());
  if (!pass) ++failures;
}

ModelParams reference_params(double pi = 0.5) {
  ModelParams params;
  params.alpha = 1.0;
  params.beta = 0.3;
  params.delta = 0.15;
  params.pi = pi;
  return params;
}

double unit_draw(std::uint64_t& state) {
  const std::uint64_t bits = splitmix64(state);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

void criterion_1() {
  const auto [lower, upper] =
      two_player_thresholds(reference_params(), 1.0 / 3.0);
  const NetworkSpec net{2, 1.0 / 3.0, Regime::Local};
  const auto [star_lower, star_upper] = planner_cutoffs(reference_params(), net);
  const double err = std::max(
      std::max(std::abs(lower - 0.487106), std::abs(upper - 0.488365)),
      std::max(std::abs(star_lower - 0.482955),
               std::abs(star_upper - 0.485437)));
  report(1, err <= 1e-5,
         "two-player equilibrium and planner cutoffs, max error " +
             std::to_string(err));
}

void criterion_2() {
  const NetworkSpec net{2, 1.0 / 3.0, Regime::Local};
  const double value =
      social_surplus(reference_params(0.488365), net, 2).value;
  report(2, std::abs(value - 0.0146495) <= 1e-6,
         "full-exploration surplus marker, value " + std::to_string(value));
}

void criterion_3() {
  // Large-n exploitation and exploration boundaries at mean degree 3.
  const NetworkSpec net = NetworkSpec::from_lambda(100000, 3.0, Regime::Local);
  const ThresholdSet set = threshold_ladder(reference_params(), net);
  const double err = std::max(std::abs(set.pi_lower - 0.4871),
                              std::abs(set.pi_bar - 0.4947));
  report(3, err <= 1e-3,
         "limiting threshold band at lambda = 3, max error " +
             std::to_string(err));
}

void criterion_4() {
  std::uint64_t state = 0xACCE5501;
  double worst = 0.0;
  int points = 0;
  while (points < 200) {
    const int n = 2 + static_cast<int>(splitmix64(state) % 4);
    ModelParams params = reference_params(0.02 + 0.96 * unit_draw(state));
    params.beta = 0.05 + 0.9 * unit_draw(state);
    params.delta = 0.05 + 0.9 * unit_draw(state);
    const NetworkSpec net{n, unit_draw(state), Regime::Local};
    for (int k = 0; k <= n; ++k) {
      const OracleResult oracle =
          exact_payoffs(params, net, StrategyProfile::with_explorers(n, k));
      for (int agent = 0; agent < n; ++agent) {
        const double closed = agent < k ? payoff_v(params, net, k)
                                        : payoff_w(params, net, k);
        worst = std::max(
            worst, std::abs(oracle.payoffs[static_cast<size_t>(agent)] - closed));
      }
      worst = std::max(worst, std::abs(oracle.surplus -
                                       social_surplus(params, net, k).value));
      ++points;
    }
  }
  report(4, worst <= 1e-12,
         "enumeration oracle vs closed-form payoffs over " +
             std::to_string(points) + " points, max error " +
             std::to_string(worst));
}

void criterion_5() {
  std::uint64_t state = 0xACCE5505;
  int checked = 0, sound = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + static_cast<int>(splitmix64(state) % 4);
    ModelParams params = reference_params(0.44 + 0.12 * unit_draw(state));
    const NetworkSpec net{n, 0.05 + 0.9 * unit_draw(state), Regime::Local};
    const int k_star = classify(params, net).k;
    bool ok = verify_nash(params, net, StrategyProfile::with_explorers(n, k_star));
    if (k_star > 0)
      ok = ok && !verify_nash(params, net,
                              StrategyProfile::with_explorers(n, k_star - 1));
    if (k_star < n)
      ok = ok && !verify_nash(params, net,
                              StrategyProfile::with_explorers(n, k_star + 1));
    ++checked;
    sound += ok;
  }
  report(5, sound == checked,
         "Nash verification sound on " + std::to_string(sound) + "/" +
             std::to_string(checked) + " classified equilibria");
}

void criterion_6() {
  const ModelParams params = reference_params(0.49);
  const double limit = kappa(params, 3.0);
  bool pass = true;
  double worst = 0.0;
  for (const int n : {1000, 10000}) {
    const NetworkSpec net = NetworkSpec::from_lambda(n, 3.0, Regime::Local);
    const double share = static_cast<double>(equilibrium_count(params, net)) / n;
    const double gap = std::abs(share - limit);
    worst = std::max(worst, gap * n);
    pass = pass && (gap <= 2.0 / n);
  }
  report(6, pass,
         "explorer share converges to kappa, worst n*|gap| = " +
             std::to_string(worst));
}

void criterion_7() {
  std::uint64_t state = 0xACCE5507;
  long violations = 0;
  long points = 0;
  while (points < 10000) {
    ModelParams params = reference_params(0.02 + 0.96 * unit_draw(state));
    params.beta = 0.05 + 0.9 * unit_draw(state);
    params.delta = 0.05 + 0.9 * unit_draw(state);
    const int n = 2 + static_cast<int>(splitmix64(state) % 39);
    const NetworkSpec net{n, 0.02 + 0.96 * unit_draw(state), Regime::Local};
    const int k = static_cast<int>(splitmix64(state) %
                                   static_cast<std::uint64_t>(n));
    const int r =
        static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(k + 1));
    const MarginalDecomposition d = banded_marginal(params, net, k, r);
    const double decay = std::pow(1.0 - params.beta, r);
    if (d.b_k < decay * d.a_k - 1e-12) ++violations;
    if (d.b_k < decay * (1.0 - params.beta) * d.a_k - 1e-12) ++violations;
    ++points;
    // Planner cutoffs never exceed the equilibrium ones.
    if (points % 25 == 0) {
      const ThresholdSet set = threshold_ladder(params, net);
      const auto [sl, su] = planner_cutoffs(params, net);
      if (sl > set.pi_lower + 1e-13) ++violations;
      if (su > set.pi_bar + 1e-13) ++violations;
    }
    // Decreasing marginals below the myopic cutoff.
    if (points % 25 == 0 && params.pi <= params.myopic_cutoff()) {
      double prev = marginal_surplus(params, net, 0).delta_u;
      for (int j = 1; j < n; ++j) {
        const double cur = marginal_surplus(params, net, j).delta_u;
        if (cur > prev + 1e-12) ++violations;
        prev = cur;
      }
    }
  }
  report(7, violations == 0,
         "inequality battery over " + std::to_string(points) +
             " random points, " + std::to_string(violations) + " violations");
}

void criterion_8() {
  bool pass = true;
  double worst = 0.0;
  for (const int n : {2, 10, 50}) {
    ModelParams params = reference_params(n == 2 ? 0.488 : 0.49);
    const double target =
        (1.0 - params.delta) *
        (params.alpha * (1.0 - params.pi) - params.pi) /
        (params.delta * params.pi * params.beta);
    for (int k = 1; k < n; ++k) {
      const double p = (1.0 - std::pow(target, 1.0 / k)) / params.beta;
      if (!(p > 0.0) || p > 1.0) continue;
      const NetworkSpec net{n, p, Regime::Local};
      const double direct = social_surplus(params, net, k).value -
                            social_surplus(params, net, k + 1).value;
      const double closed = surplus_drop_closed_form(params, n, p, k);
      const double err = std::abs(direct - closed);
      worst = std::max(worst, err);
      pass = pass && err <= 1e-10;
    }
  }
  report(8, pass,
         "closed-form regime-boundary drop, max error " + std::to_string(worst));
}

void criterion_9() {
  bool pass = true;
  // Fixed-point residual of psi.
  double worst_residual = 0.0;
  for (const double lambda : {0.3, 0.8, 1.5, 3.0})
    for (const double z : {0.2, 0.7, 1.0}) {
      const double value = psi(lambda, z);
      worst_residual = std::max(
          worst_residual,
          std::abs(value - z * std::exp(lambda * (value - 1.0))));
    }
  pass = pass && worst_residual <= 1e-12;
  // Borel mass matches psi(lambda, 1).
  double worst_mass = 0.0;
  for (const double lambda : {0.5, 2.0}) {
    double mass = 0.0;
    for (int k = 1; k <= 5000; ++k) mass += borel_pmf(lambda, k);
    worst_mass = std::max(worst_mass, std::abs(mass - psi(lambda, 1.0)));
  }
  pass = pass && worst_mass <= 1e-10;
  // Second derivative against central differences.
  const double h = 1e-5;
  double worst_d2 = 0.0;
  for (const double lambda : {0.5, 1.7, 2.6}) {
    const PsiDerivatives d = psi_derivatives_at(lambda, 0.8);
    const double d2 =
        (psi(lambda + h, 0.8) - 2 * psi(lambda, 0.8) + psi(lambda - h, 0.8)) /
        (h * h);
    worst_d2 = std::max(worst_d2, std::abs(d.second - d2));
  }
  pass = pass && worst_d2 <= 1e-4;
  // Tiny signal precision: threshold curvature spikes at the percolation point.
  ModelParams params = reference_params();
  params.beta = 0.002;
  double best_lambda = 0.0, best = -1.0;
  const double step = 0.004;
  for (double lambda = 0.2; lambda <= 3.0; lambda += step) {
    const double c = std::abs(global_threshold_limit(params, lambda + step) -
                              2.0 * global_threshold_limit(params, lambda) +
                              global_threshold_limit(params, lambda - step));
    if (c > best) {
      best = c;
      best_lambda = lambda;
    }
  }
  pass = pass && best_lambda > 0.9 && best_lambda < 1.1;
  report(9, pass,
         "branching-process machinery (residual " +
             std::to_string(worst_residual) + ", mass gap " +
             std::to_string(worst_mass) + ", kink at lambda = " +
             std::to_string(best_lambda) + ")");
}

void criterion_10() {
  VerifyOptions options;
  options.reps = 100000;
  const std::vector<CheckResult> mc = run_suite("montecarlo", options);
  bool pass = all_passed(mc);
  for (const CheckResult& r : mc)
    pass = pass && r.status == CheckStatus::Pass;
  // The component law approaches Borel as n grows, exactly.
  const double lambda = 0.8;
  double prev_tv = 2.0;
  bool decreasing = true;
  for (const int n : {10, 20, 30}) {
    const std::vector<double> pmf = exact_component_pmf(n, lambda / n);
    double tv = 0.0;
    for (int s = 1; s <= n; ++s)
      tv += std::abs(pmf[static_cast<size_t>(s)] - borel_pmf(lambda, s));
    double tail = 0.0;
    for (int s = n + 1; s <= 5000; ++s) tail += borel_pmf(lambda, s);
    tv = (tv + tail + (1.0 - psi(lambda, 1.0))) / 2.0;
    decreasing = decreasing && tv < prev_tv;
    prev_tv = tv;
  }
  pass = pass && decreasing;
  report(10, pass,
         "Monte Carlo suite (" + std::to_string(mc.size()) +
             " checks) and exact Borel convergence, final TV " +
             std::to_string(prev_tv));
}

void criterion_11() {
  ModelParams params;
  params.alpha = 1.0;
  params.beta = 0.05;
  params.delta = 0.3;
  std::vector<double> pi_grid;
  for (int i = 1; i <= 99; ++i) pi_grid.push_back(i / 100.0);
  const NetworkSpec inside =
      NetworkSpec::from_lambda(500, 1.0 / params.delta - 2.0, Regime::Local);
  const ComplementarityReport at_bound =
      complementarity_check(params, inside, pi_grid);
  bool pass = at_bound.bound_holds && at_bound.min_derivative >= -1e-12;
  double most_negative = 0.0;
  for (const double lambda : {1.45, 1.7, 2.0, 2.5}) {
    const NetworkSpec net = NetworkSpec::from_lambda(500, lambda, Regime::Local);
    most_negative = std::min(
        most_negative, complementarity_check(params, net, pi_grid).min_derivative);
  }
  pass = pass && most_negative < 0.0;
  report(11, pass,
         "complementarity bound (min at bound " +
             std::to_string(at_bound.min_derivative) +
             ", beyond it " + std::to_string(most_negative) + ")");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (failures > 0) {
    std::printf("%d criteria failed\n", failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
