#include "socband/oracle.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "socband/surplus.hpp"

namespace socband {

int StrategyProfile::explorer_count() const {
  int k = 0;
  for (const Action a : choices)
    if (a == Action::Explore) ++k;
  return k;
}

StrategyProfile StrategyProfile::with_explorers(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n");
  StrategyProfile profile;
  profile.choices.assign(static_cast<size_t>(n), Action::Exploit);
  for (int i = 0; i < k; ++i) profile.choices[static_cast<size_t>(i)] = Action::Explore;
  return profile;
}

namespace {

// Second-period rule after ell = 0 out of m observed trials: risky iff the
// unnormalized posterior edge clears the boundary guard; ties go safe.
std::vector<bool> explore_after_failures(const ModelParams& params, int m_max) {
  const double miss = params.alpha * (1.0 - params.pi);
  std::vector<bool> rule(static_cast<size_t>(m_max) + 1);
  double decay = 1.0;
  for (int m = 0; m <= m_max; ++m, decay *= 1.0 - params.beta)
    rule[static_cast<size_t>(m)] =
        guarded_positive(params.pi * decay - miss, miss + params.pi) > 0.0;
  return rule;
}

OracleResult enumerate_graphs(const ModelParams& params, const NetworkSpec& net,
                              const StrategyProfile& profile) {
  const int n = net.n;
  const double pi = params.pi;
  const double beta = params.beta;
  const double delta = params.delta;
  const int edge_count = n * (n - 1) / 2;

  std::vector<int> explorers;
  for (int i = 0; i < n; ++i)
    if (profile.choices[static_cast<size_t>(i)] == Action::Explore)
      explorers.push_back(i);
  const int k = static_cast<int>(explorers.size());
  std::vector<int> explorer_slot(static_cast<size_t>(n), -1);
  for (int s = 0; s < k; ++s)
    explorer_slot[static_cast<size_t>(explorers[static_cast<size_t>(s)])] = s;

  const std::vector<bool> rule = explore_after_failures(params, n);

  std::vector<double> edge_weight(static_cast<size_t>(edge_count) + 1);
  for (int e = 0; e <= edge_count; ++e)
    edge_weight[static_cast<size_t>(e)] =
        std::pow(net.p, e) * std::pow(1.0 - net.p, edge_count - e);

  // Signal-vector weights under theta = 1, by success count.
  std::vector<double> success_weight(static_cast<size_t>(k) + 1);
  for (int s = 0; s <= k; ++s)
    success_weight[static_cast<size_t>(s)] =
        std::pow(beta, s) * std::pow(1.0 - beta, k - s);

  OracleResult result;
  result.payoffs.assign(static_cast<size_t>(n), 0.0);
  double total_weight = 0.0;

  std::vector<std::uint32_t> obs(static_cast<size_t>(n));  // slots seen by i
  std::vector<int> component(static_cast<size_t>(n));
  for (std::uint32_t graph = 0; graph < (1u << edge_count); ++graph) {
    const double wg = edge_weight[static_cast<size_t>(std::popcount(graph))];
    if (wg == 0.0) continue;

    if (net.regime == Regime::Local) {
      for (int i = 0; i < n; ++i) obs[static_cast<size_t>(i)] = 0;
      int bit = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
          if (graph & (1u << bit)) {
            if (explorer_slot[static_cast<size_t>(j)] >= 0)
              obs[static_cast<size_t>(i)] |=
                  1u << explorer_slot[static_cast<size_t>(j)];
            if (explorer_slot[static_cast<size_t>(i)] >= 0)
              obs[static_cast<size_t>(j)] |=
                  1u << explorer_slot[static_cast<size_t>(i)];
          }
    } else {
      for (int i = 0; i < n; ++i) component[static_cast<size_t>(i)] = i;
      int bit = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
          if (graph & (1u << bit)) {
            const int a = component[static_cast<size_t>(i)];
            const int b = component[static_cast<size_t>(j)];
            if (a != b)
              for (int v = 0; v < n; ++v)
                if (component[static_cast<size_t>(v)] == b)
                  component[static_cast<size_t>(v)] = a;
          }
      for (int i = 0; i < n; ++i) {
        std::uint32_t seen = 0;
        for (int s = 0; s < k; ++s) {
          const int j = explorers[static_cast<size_t>(s)];
          if (j != i && component[static_cast<size_t>(j)] ==
                            component[static_cast<size_t>(i)])
            seen |= 1u << s;
        }
        obs[static_cast<size_t>(i)] = seen;
      }
    }
    // Own trial joins the information set.
    for (int s = 0; s < k; ++s)
      obs[static_cast<size_t>(explorers[static_cast<size_t>(s)])] |= 1u << s;

    // theta = 0: every trial fails.
    {
      const double w = (1.0 - pi) * wg;
      total_weight += w;
      for (int i = 0; i < n; ++i) {
        double pay = 0.0;
        if (explorer_slot[static_cast<size_t>(i)] >= 0)
          pay += (1.0 - delta) * -params.alpha;
        const int m = std::popcount(obs[static_cast<size_t>(i)]);
        if (rule[static_cast<size_t>(m)]) pay += delta * -params.alpha;
        result.payoffs[static_cast<size_t>(i)] += w * pay;
      }
    }
    // theta = 1: enumerate the explorers' success vector.
    for (std::uint32_t signals = 0; signals < (1u << k); ++signals) {
      const double w =
          pi * wg * success_weight[static_cast<size_t>(std::popcount(signals))];
      total_weight += w;
      if (w == 0.0) continue;
      for (int i = 0; i < n; ++i) {
        double pay = 0.0;
        if (explorer_slot[static_cast<size_t>(i)] >= 0) pay += 1.0 - delta;
        const std::uint32_t seen = obs[static_cast<size_t>(i)];
        const bool conclusive = (seen & signals) != 0;
        const int m = std::popcount(seen);
        if (conclusive || rule[static_cast<size_t>(m)]) pay += delta;
        result.payoffs[static_cast<size_t>(i)] += w * pay;
      }
    }
  }
  if (std::abs(total_weight - 1.0) > 1e-12)
    throw std::logic_error("enumerated branch probabilities do not sum to 1");
  for (const double u : result.payoffs) result.surplus += u;
  return result;
}

// Per-agent enumeration over the exact observation pmf, for populations past
// the full-graph cap.
OracleResult enumerate_pmf(const ModelParams& params, const NetworkSpec& net,
                           const StrategyProfile& profile) {
  const double pi = params.pi;
  const double beta = params.beta;
  const double delta = params.delta;
  const int k = profile.explorer_count();
  const std::vector<bool> rule = explore_after_failures(params, net.n);

  OracleResult result;
  result.payoffs.assign(static_cast<size_t>(net.n), 0.0);
  for (int i = 0; i < net.n; ++i) {
    const bool explorer =
        profile.choices[static_cast<size_t>(i)] == Action::Explore;
    const int marked = k - (explorer ? 1 : 0);
    const std::vector<double> pmf = observation_pmf(net, marked);
    double u = 0.0;
    if (explorer) {
      u += (1.0 - delta) * (pi * 1.0 + (1.0 - pi) * -params.alpha);
      u += delta * pi * beta;  // theta = 1, own trial succeeds
    }
    for (int m = 0; m < static_cast<int>(pmf.size()); ++m) {
      const double q = pmf[static_cast<size_t>(m)];
      const double all_fail = std::pow(1.0 - beta, m);
      const int fails = m + (explorer ? 1 : 0);
      if (explorer) {
        // theta = 1: own failure with group success, or everyone fails.
        u += delta * pi * (1.0 - beta) * q * (1.0 - all_fail);
        if (rule[static_cast<size_t>(fails)])
          u += delta * pi * (1.0 - beta) * q * all_fail;
      } else {
        u += delta * pi * q * (1.0 - all_fail);
        if (rule[static_cast<size_t>(fails)]) u += delta * pi * q * all_fail;
      }
      // theta = 0: every trial fails with certainty.
      if (rule[static_cast<size_t>(fails)])
        u += delta * (1.0 - pi) * q * -params.alpha;
    }
    result.payoffs[static_cast<size_t>(i)] = u;
    result.surplus += u;
  }
  return result;
}

}  // namespace

OracleResult exact_payoffs(const ModelParams& params, const NetworkSpec& net,
                           const StrategyProfile& profile) {
  params.validate();
  net.validate();
  if (static_cast<int>(profile.choices.size()) != net.n)
    throw std::invalid_argument("profile length must equal n");
  if (net.n <= kOracleEnumMaxN) return enumerate_graphs(params, net, profile);
  if (net.n <= kOraclePmfMaxN) return enumerate_pmf(params, net, profile);
  throw std::invalid_argument("oracle requires n <= " +
                              std::to_string(kOraclePmfMaxN));
}

bool verify_nash(const ModelParams& params, const NetworkSpec& net,
                 const StrategyProfile& profile) {
  const OracleResult base = exact_payoffs(params, net, profile);
  for (int i = 0; i < net.n; ++i) {
    StrategyProfile deviated = profile;
    const bool explorer =
        profile.choices[static_cast<size_t>(i)] == Action::Explore;
    deviated.choices[static_cast<size_t>(i)] =
        explorer ? Action::Exploit : Action::Explore;
    const OracleResult dev = exact_payoffs(params, net, deviated);
    const double own = base.payoffs[static_cast<size_t>(i)];
    const double alt = dev.payoffs[static_cast<size_t>(i)];
    const double tol = kBoundaryGuard * (1.0 + std::abs(own));
    // Explorers must strictly prefer exploring; exploiters weakly prefer
    // exploiting.
    if (explorer ? own <= alt + tol : own < alt - tol) return false;
  }
  return true;
}

std::pair<int, double> exact_optimum(const ModelParams& params,
                                     const NetworkSpec& net) {
  params.validate();
  net.validate();
  int best_k = 0;
  double best = 0.0;
  for (int k = 0; k <= net.n; ++k) {
    const double value =
        net.n <= kOracleEnumMaxN
            ? exact_payoffs(params, net,
                            StrategyProfile::with_explorers(net.n, k))
                  .surplus
            : social_surplus(params, net, k).value;
    if (k == 0 || value > best + kBoundaryGuard * (1.0 + std::abs(best))) {
      best = value;
      best_k = k;
    }
  }
  return {best_k, best};
}

}  // namespace socband
