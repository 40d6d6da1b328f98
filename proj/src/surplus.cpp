#include "socband/surplus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "socband/equilibrium.hpp"

namespace socband {

namespace {

double exploit_threshold_denominator(const ModelParams& params, double decay) {
  return (1.0 + params.alpha) * (1.0 - params.delta) +
         params.delta * params.beta * decay;
}

// Binomial(a, p) pmf over 0..a by the multiplicative recursion.
std::vector<double> binom_pmf(int a, double p) {
  std::vector<double> pmf(static_cast<size_t>(a) + 1, 0.0);
  if (p <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (p >= 1.0) {
    pmf[static_cast<size_t>(a)] = 1.0;
    return pmf;
  }
  pmf[0] = std::pow(1.0 - p, a);
  const double ratio = p / (1.0 - p);
  for (int m = 1; m <= a; ++m)
    pmf[static_cast<size_t>(m)] =
        pmf[static_cast<size_t>(m - 1)] * ratio * (a - m + 1) / m;
  return pmf;
}

double binom_point(int a, double p, int b) {
  if (b < 0 || b > a || a < 0) return 0.0;
  return binom_pmf(a, p)[static_cast<size_t>(b)];
}

// Q_a(b) = P(Bin(a,p) <= b), 0 for b < 0, 1 for b >= a.
double binom_cdf(int a, double p, int b) {
  if (b < 0) return 0.0;
  if (b >= a) return 1.0;
  const std::vector<double> pmf = binom_pmf(a, p);
  double sum = 0.0;
  for (int m = 0; m <= b; ++m) sum += pmf[static_cast<size_t>(m)];
  return sum;
}

// sum_{m=lo}^{a} q_a(m) (1-beta)^m, empty when lo > a.
double decay_tail(int a, double p, double beta, int lo) {
  if (a < 0 || lo > a) return 0.0;
  const std::vector<double> pmf = binom_pmf(a, p);
  double sum = 0.0;
  double decay = std::pow(1.0 - beta, std::max(lo, 0));
  for (int m = std::max(lo, 0); m <= a; ++m, decay *= 1.0 - beta)
    sum += pmf[static_cast<size_t>(m)] * decay;
  return sum;
}

// Band index r >= 0 with alpha/(1-beta)^r <= pi/(1-pi) <= alpha/(1-beta)^{r+1},
// for pi strictly above the myopic cutoff. exact_boundary is set when the odds
// ratio sits on the lower band edge (where the adjacent band is equally valid).
int band_index(const ModelParams& params, bool* exact_boundary) {
  const double odds = params.pi / (1.0 - params.pi);
  const double t = std::log(odds / params.alpha) / -std::log1p(-params.beta);
  const double nearest = std::round(t);
  const bool on_edge = std::abs(t - nearest) <= 1e-9 * std::max(1.0, t);
  if (exact_boundary != nullptr) *exact_boundary = on_edge && nearest > 0.0;
  const int r = on_edge ? static_cast<int>(nearest)
                        : static_cast<int>(std::floor(t));
  return std::max(r, 0);
}

// d(Delta u_k)/d pi in the low-belief region, from the closed form.
double low_belief_derivative(const ModelParams& params, const NetworkSpec& net,
                             int k) {
  const double p = net.p;
  const double pbeta = p * params.beta;
  const double mass = 1.0 + (net.n - 1) * p -
                      k * p * (1.0 - p) * params.beta / (1.0 - pbeta);
  return (1.0 - params.delta) * (1.0 + params.alpha) +
         params.delta * params.beta * std::pow(1.0 - pbeta, k) * mass;
}

}  // namespace

SurplusPoint social_surplus(const ModelParams& params, const NetworkSpec& net,
                            int k) {
  params.validate();
  net.validate();
  if (k < 0 || k > net.n)
    throw std::invalid_argument("explorer count must lie in [0, n]");
  SurplusPoint point;
  point.k = k;
  point.n = net.n;
  // The total splits agent by agent: k explorers at v_k, n-k exploiters at
  // w_k, which reproduces the six-term sum exactly.
  double total = 0.0;
  if (k > 0) total += k * payoff_v(params, net, k);
  if (k < net.n) total += (net.n - k) * payoff_w(params, net, k);
  point.value = total;
  return point;
}

MarginalDecomposition banded_marginal(const ModelParams& params,
                                      const NetworkSpec& net, int k, int r) {
  params.validate();
  net.validate();
  if (k < 0 || k > net.n - 1)
    throw std::invalid_argument("explorer count must lie in [0, n-1]");
  if (r < 0 || r > k)
    throw std::invalid_argument("band index must satisfy 0 <= r <= k");
  const int n = net.n;
  const double p = net.p;
  const double beta = params.beta;
  const double delta = params.delta;

  MarginalDecomposition d;
  d.region = MarginalRegion::Banded;
  d.r = r;
  d.a_k = (1.0 - delta) + delta * (k + 1) * binom_cdf(k, p, r - 1) +
          delta * (n - k - 1) * binom_cdf(k + 1, p, r) -
          delta * k * binom_cdf(k - 1, p, r - 1) -
          delta * (n - k) * binom_cdf(k, p, r);
  // Equivalent pointwise form of a_k; disagreement means the cdf evaluation
  // went numerically wrong, so treat it as an internal error.
  const double a_check = 1.0 - delta - delta * k * p * binom_point(k - 1, p, r - 1) -
                         delta * (n - k) * p * binom_point(k, p, r) -
                         delta * (1.0 - p) * binom_point(k, p, r);
  if (std::abs(d.a_k - a_check) > 1e-10 * (1.0 + std::abs(d.a_k)))
    throw std::logic_error("A_k consistency check failed");
  d.b_k = (1.0 - delta) -
          delta * (k + 1) * (1.0 - beta) * decay_tail(k, p, beta, r) -
          delta * (n - k - 1) * decay_tail(k + 1, p, beta, r + 1) +
          delta * k * (1.0 - beta) * decay_tail(k - 1, p, beta, r) +
          delta * (n - k) * decay_tail(k, p, beta, r + 1);
  d.delta_u = params.pi * d.b_k - params.alpha * (1.0 - params.pi) * d.a_k;
  return d;
}

MarginalDecomposition marginal_surplus(const ModelParams& params,
                                       const NetworkSpec& net, int k) {
  params.validate();
  net.validate();
  if (k < 0 || k > net.n - 1)
    throw std::invalid_argument("explorer count must lie in [0, n-1]");
  const double miss = params.alpha * (1.0 - params.pi);
  const double gain = params.pi - miss;
  if (params.pi <= params.myopic_cutoff() * (1.0 + kBoundaryGuard)) {
    MarginalDecomposition d;
    d.region = MarginalRegion::LowBelief;
    const double pbeta = net.p * params.beta;
    d.delta_u = (1.0 - params.delta) * gain +
                params.delta * params.pi * params.beta *
                    std::pow(1.0 - pbeta, k) *
                    (1.0 + (net.n - 1) * net.p -
                     k * net.p * (1.0 - net.p) * params.beta / (1.0 - pbeta));
    return d;
  }
  if (params.pi >= 1.0) {
    MarginalDecomposition d;
    d.region = MarginalRegion::HighBeliefLowK;
    d.r = k + 1;
    d.delta_u = (1.0 - params.delta) * gain;
    return d;
  }
  bool on_edge = false;
  int r = band_index(params, &on_edge);
  // On an exact band edge the adjacent band gives the same value; keep the
  // banded evaluation whenever k admits it.
  if (on_edge && k == r - 1) --r;
  if (k < r) {
    MarginalDecomposition d;
    d.region = MarginalRegion::HighBeliefLowK;
    d.r = r;
    d.delta_u = (1.0 - params.delta) * gain;
    return d;
  }
  return banded_marginal(params, net, k, r);
}

std::pair<double, double> planner_cutoffs(const ModelParams& params,
                                          const NetworkSpec& net) {
  params.validate();
  net.validate();
  if (net.n < 2) throw std::invalid_argument("planner cutoffs need n >= 2");
  const int n = net.n;
  const double p = net.p;
  const double beta = params.beta;
  const double delta = params.delta;
  const double num = params.alpha * (1.0 - delta);
  const double lower =
      num / (exploit_threshold_denominator(params, 1.0) + delta * (n - 1) * p * beta);
  const double upper_decay =
      std::pow(1.0 - p * beta, n - 2) * (n * p * (1.0 - beta) + 1.0 - p);
  const double upper = num / exploit_threshold_denominator(params, upper_decay);
  return {lower, upper};
}

std::pair<double, double> planner_cutoffs_limit(const ModelParams& params,
                                                double lambda) {
  params.validate();
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
  const double num = params.alpha * (1.0 - params.delta);
  const double lower =
      num / exploit_threshold_denominator(params, lambda + 1.0);
  const double upper_decay = std::exp(-lambda * params.beta) *
                             (lambda * (1.0 - params.beta) + 1.0);
  const double upper = num / exploit_threshold_denominator(params, upper_decay);
  return {lower, upper};
}

double surplus_drop_closed_form(const ModelParams& params, int n, double p,
                                int k) {
  const double beta = params.beta;
  const double pbeta = p * beta;
  const double denom = exploit_threshold_denominator(
      params, std::pow(1.0 - pbeta, k));
  return -params.alpha * p * beta * params.delta * (1.0 - params.delta) *
         std::pow(1.0 - pbeta, k - 1) *
         ((n - 1) * (1.0 - pbeta) - k * (1.0 - p) * beta) / denom;
}

SurplusCurve equilibrium_surplus_curve(const ModelParams& params, int n,
                                       std::span<const double> lambda_grid) {
  params.validate();
  if (lambda_grid.empty())
    throw std::invalid_argument("lambda grid must not be empty");
  SurplusCurve curve;
  curve.points.reserve(lambda_grid.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const double lambda : lambda_grid) {
    const NetworkSpec net = NetworkSpec::from_lambda(n, lambda, Regime::Local);
    const int k = equilibrium_count(params, net);
    curve.points.emplace_back(lambda,
                              social_surplus(params, net, k).per_capita());
    lo = std::min(lo, lambda);
    hi = std::max(hi, lambda);
  }
  // Regime boundaries in closed form: pi = pi_{k,n}(lambda) solves
  // (1 - p beta)^k = (1-delta)(alpha(1-pi) - pi) / (delta pi beta).
  const double miss = params.alpha * (1.0 - params.pi);
  const double target = (1.0 - params.delta) * (miss - params.pi) /
                        (params.delta * params.pi * params.beta);
  if (target > 0.0 && target < 1.0) {
    for (int k = 1; k < n; ++k) {
      const double p = (1.0 - std::pow(target, 1.0 / k)) / params.beta;
      if (!(p > 0.0) || p > 1.0) continue;
      const double lambda_star = n * p;
      if (lambda_star < lo || lambda_star > hi) continue;
      SurplusJump jump;
      jump.lambda_star = lambda_star;
      jump.k = k;
      jump.drop = surplus_drop_closed_form(params, n, p, k) / n;
      const NetworkSpec net{n, p, Regime::Local};
      const double direct = (social_surplus(params, net, k).value -
                             social_surplus(params, net, k + 1).value) /
                            n;
      if (std::abs(jump.drop - direct) > 1e-10)
        throw std::logic_error("surplus drop mismatch at a regime boundary");
      curve.jumps.push_back(jump);
    }
    std::sort(curve.jumps.begin(), curve.jumps.end(),
              [](const SurplusJump& a, const SurplusJump& b) {
                return a.lambda_star < b.lambda_star;
              });
  }
  return curve;
}

double flat_region_lambda(const ModelParams& params) {
  params.validate();
  const double miss = params.alpha * (1.0 - params.pi);
  const double ratio = (1.0 - params.delta) * (miss - params.pi) /
                       (params.delta * params.pi * params.beta);
  if (!(ratio > 0.0) || ratio >= 1.0)
    throw std::domain_error(
        "flat-region threshold needs pi strictly inside the intermediate band");
  return -std::log(ratio) / params.beta;
}

double limit_surplus(const ModelParams& params, double lambda) {
  params.validate();
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
  const double pi = params.pi;
  const double miss = params.alpha * (1.0 - pi);
  const double delta = params.delta;
  const double beta = params.beta;
  const double pi_lower =
      params.alpha * (1.0 - delta) / exploit_threshold_denominator(params, 1.0);
  if (pi <= pi_lower * (1.0 + kBoundaryGuard)) return 0.0;
  const double pi_bar_inf =
      params.alpha * (1.0 - delta) /
      exploit_threshold_denominator(params, std::exp(-lambda * beta));
  if (pi <= pi_bar_inf * (1.0 + kBoundaryGuard))
    // Interior explorer fraction kappa < 1: the lambda-dependence cancels.
    return (1.0 - delta) * (pi - miss) / beta + delta * pi;
  // Full exploration: M ~ Poisson(lambda), truncated where the tail mass
  // drops below 1e-14 (summand bounded by 1).
  const int m_max =
      static_cast<int>(std::ceil(lambda + 40.0 * std::sqrt(lambda) + 40.0));
  double expect = 0.0;
  double pmf = std::exp(-lambda);
  double decay = 1.0 - beta;
  for (int m = 0; m <= m_max; ++m) {
    expect += pmf * guarded_positive(pi * decay - miss, miss + pi);
    pmf *= lambda / (m + 1);
    decay *= 1.0 - beta;
  }
  return (1.0 - delta) * (pi - miss) +
         delta * pi * (1.0 - (1.0 - beta) * std::exp(-lambda * beta)) +
         delta * expect;
}

double nth_externality_limit(const ModelParams& params, double lambda) {
  params.validate();
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
  return lambda * params.beta * std::exp(-lambda * params.beta);
}

double nth_externality_finite(const ModelParams& params, int n, double lambda) {
  params.validate();
  if (n < 2) throw std::invalid_argument("need n >= 2");
  // Coupled per-agent difference n(E_{n-1}[1-(1-beta)^M] - E_{n-2}[...]),
  // which collapses to n p beta (1 - p beta)^{n-2}.
  const double pbeta = lambda / n * params.beta;
  return n * pbeta * std::pow(1.0 - pbeta, n - 2);
}

ComplementarityReport complementarity_check(const ModelParams& params,
                                            const NetworkSpec& net,
                                            std::span<const double> pi_grid) {
  params.validate();
  net.validate();
  if (net.regime != Regime::Local)
    throw std::domain_error("complementarity check is local-regime only");
  if (pi_grid.empty())
    throw std::invalid_argument("belief grid must not be empty");
  ComplementarityReport report;
  report.min_derivative = std::numeric_limits<double>::infinity();
  const double straight = (1.0 - params.delta) * (1.0 + params.alpha);
  for (const double pi : pi_grid) {
    if (!(pi > 0.0) || !(pi < 1.0))
      throw std::invalid_argument("belief grid entries must lie in (0,1)");
    ModelParams at = params;
    at.pi = pi;
    const bool low = pi <= at.myopic_cutoff() * (1.0 + kBoundaryGuard);
    const int r = low ? 0 : band_index(at, nullptr);
    for (int k = 0; k < net.n; ++k) {
      double derivative;
      if (low)
        derivative = low_belief_derivative(at, net, k);
      else if (k < r)
        derivative = straight;
      else {
        const MarginalDecomposition d = banded_marginal(at, net, k, r);
        derivative = d.b_k + params.alpha * d.a_k;
      }
      if (derivative < report.min_derivative) {
        report.min_derivative = derivative;
        report.argmin_k = k;
        report.argmin_pi = pi;
      }
    }
  }
  report.bound_holds = params.delta * (net.lambda() + 2.0) <= 1.0;
  return report;
}

}  // namespace socband
