#include "socband/model.hpp"

#include <cmath>

#include "socband/netsim.hpp"

namespace socband {

void ModelParams::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(beta > 0.0) || !(beta < 1.0))
    throw std::invalid_argument("beta must lie strictly in (0,1)");
  if (!(delta >= 0.0) || !(delta <= 1.0))
    throw std::invalid_argument("delta must lie in [0,1]");
  if (!(pi >= 0.0) || !(pi <= 1.0))
    throw std::invalid_argument("pi must lie in [0,1]");
}

void NetworkSpec::validate() const {
  if (n < 1) throw std::invalid_argument("population size must be >= 1");
  if (!(p >= 0.0) || !(p <= 1.0))
    throw std::invalid_argument("connection probability must lie in [0,1]");
}

NetworkSpec NetworkSpec::from_lambda(int n, double lambda, Regime regime) {
  if (n < 1) throw std::invalid_argument("population size must be >= 1");
  NetworkSpec net{n, lambda / static_cast<double>(n), regime};
  net.validate();
  return net;
}

void ObservationCount::validate() const {
  if (m < 0 || ell < 0 || ell > m)
    throw std::invalid_argument("need 0 <= ell <= m");
}

double guarded_positive(double x, double scale) {
  if (x <= kBoundaryGuard * scale) return 0.0;
  return x;
}

double posterior(const ModelParams& params, const ObservationCount& obs) {
  params.validate();
  obs.validate();
  if (obs.ell >= 1) return 1.0;  // a high signal is conclusive
  const double decay = std::pow(1.0 - params.beta, obs.m);
  const double num = params.pi * decay;
  return num / (1.0 - params.pi + num);
}

double second_period_value(double posterior, double alpha) {
  return std::max(posterior - alpha * (1.0 - posterior), 0.0);
}

namespace {

// Bin(count, p) pmf by the multiplicative recursion; count stays small
// (<= n) so no log-space handling is needed.
std::vector<double> binomial_pmf(int count, double p) {
  std::vector<double> pmf(static_cast<size_t>(count) + 1, 0.0);
  if (p <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (p >= 1.0) {
    pmf[static_cast<size_t>(count)] = 1.0;
    return pmf;
  }
  pmf[0] = std::pow(1.0 - p, count);
  const double ratio = p / (1.0 - p);
  for (int m = 1; m <= count; ++m)
    pmf[static_cast<size_t>(m)] =
        pmf[static_cast<size_t>(m - 1)] * ratio * (count - m + 1) / m;
  return pmf;
}

// Hypergeometric pmf of the number of marked vertices among `draws` draws
// without replacement from `population` vertices of which `marked` are
// marked; accumulated into `out` with weight `w`.
void add_hypergeometric(std::vector<double>& out, double w, int population,
                        int marked, int draws) {
  const int lo = std::max(0, draws - (population - marked));
  const int hi = std::min(marked, draws);
  if (lo > hi) return;
  // P(M=lo) then the standard ratio recursion.
  double val = 1.0;
  // C(marked,lo)*C(population-marked,draws-lo)/C(population,draws), built as
  // a product of probabilities to stay in range.
  // Use lgamma for robustness: populations here are tiny (<= 29).
  auto lchoose = [](int a, int b) {
    if (b < 0 || b > a) return -1e300;
    return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) -
           std::lgamma(a - b + 1.0);
  };
  val = std::exp(lchoose(marked, lo) + lchoose(population - marked, draws - lo) -
                 lchoose(population, draws));
  for (int m = lo;; ++m) {
    out[static_cast<size_t>(m)] += w * val;
    if (m == hi) break;
    val *= static_cast<double>(marked - m) * (draws - m) /
           (static_cast<double>(m + 1) *
            (population - marked - draws + m + 1));
  }
}

}  // namespace

std::vector<double> observation_pmf(const NetworkSpec& net, int marked) {
  net.validate();
  if (marked < 0 || marked > net.n - 1)
    throw std::invalid_argument("marked explorer count must lie in [0, n-1]");
  if (net.regime == Regime::Local) return binomial_pmf(marked, net.p);

  if (net.n > kGlobalExactMaxN)
    throw std::domain_error(
        "global regime exact pmf requires n <= " +
        std::to_string(kGlobalExactMaxN) + "; use netsim Monte Carlo instead");
  // Condition on the component size of the evaluating agent. Given
  // |C| = c, exchangeability makes the other c-1 members a uniform draw
  // from the remaining n-1 vertices, so M | c is hypergeometric.
  const std::vector<double> comp = exact_component_pmf(net.n, net.p);
  std::vector<double> pmf(static_cast<size_t>(marked) + 1, 0.0);
  for (int c = 1; c <= net.n; ++c)
    add_hypergeometric(pmf, comp[static_cast<size_t>(c)], net.n - 1, marked,
                       c - 1);
  return pmf;
}

double decay_expectation(const NetworkSpec& net, int marked, double beta) {
  if (net.regime == Regime::Local) {
    if (marked < 0 || marked > net.n - 1)
      throw std::invalid_argument("marked explorer count must lie in [0, n-1]");
    return std::pow(1.0 - net.p * beta, marked);
  }
  const std::vector<double> pmf = observation_pmf(net, marked);
  double sum = 0.0;
  double decay = 1.0;
  for (size_t m = 0; m < pmf.size(); ++m, decay *= 1.0 - beta)
    sum += pmf[m] * decay;
  return sum;
}

double payoff_w(const ModelParams& params, const NetworkSpec& net, int k) {
  params.validate();
  if (k < 0 || k > net.n - 1)
    throw std::invalid_argument("payoff_w requires 0 <= k <= n-1");
  const double pi = params.pi;
  const double miss = params.alpha * (1.0 - pi);
  const std::vector<double> pmf = observation_pmf(net, k);
  double sum_pos = 0.0, sum_decay = 0.0;
  double decay = 1.0;
  for (size_t m = 0; m < pmf.size(); ++m, decay *= 1.0 - params.beta) {
    sum_pos += pmf[m] * guarded_positive(pi * decay - miss, miss + pi);
    sum_decay += pmf[m] * decay;
  }
  return params.delta * (sum_pos + pi * (1.0 - sum_decay));
}

double payoff_v(const ModelParams& params, const NetworkSpec& net, int k) {
  params.validate();
  if (k < 1 || k > net.n)
    throw std::invalid_argument("payoff_v requires 1 <= k <= n");
  const double pi = params.pi;
  const double beta = params.beta;
  const double miss = params.alpha * (1.0 - pi);
  const std::vector<double> pmf = observation_pmf(net, k - 1);
  double sum_pos = 0.0, sum_decay = 0.0;
  double decay = 1.0;
  for (size_t m = 0; m < pmf.size(); ++m, decay *= 1.0 - beta) {
    sum_pos += pmf[m] * guarded_positive(pi * decay * (1.0 - beta) - miss,
                                         miss + pi);
    sum_decay += pmf[m] * decay;
  }
  return (1.0 - params.delta) * (pi - miss) +
         params.delta * (pi * beta + sum_pos +
                         pi * (1.0 - beta) * (1.0 - sum_decay));
}

double gamma_k(const ModelParams& params, const NetworkSpec& net, int k) {
  params.validate();
  if (k < 0) throw std::invalid_argument("gamma_k requires k >= 0");
  const double beta = params.beta;
  return -beta * decay_expectation(net, k, beta);
}

}  // namespace socband
