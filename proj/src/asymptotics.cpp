#include "socband/asymptotics.hpp"

#include <cmath>

namespace socband {

double lambert_w0(double x) {
  constexpr double kBranchPoint = -0.36787944117144233;  // -1/e
  if (x < kBranchPoint - 1e-15)
    throw std::domain_error("lambert_w0: argument below -1/e");
  if (x <= kBranchPoint) return -1.0;
  if (x == 0.0) return 0.0;

  double w;
  const double q = 2.0 * (std::exp(1.0) * x + 1.0);
  if (q < 1e-3) {
    // Branch-point series in p = sqrt(2(e x + 1)).
    const double p = std::sqrt(q);
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (x < 0.0) {
    // Series around 0 as a starting point.
    w = x * (1.0 - x + 1.5 * x * x);
  } else {
    w = std::log1p(x);
  }
  for (int it = 0; it < 50; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 1e-16 * std::max(std::abs(w), 1e-300)) break;
  }
  return w;
}

double psi(double lambda, double z) {
  if (!(lambda > 0.0)) throw std::invalid_argument("psi: lambda must be > 0");
  if (!(z >= 0.0) || z > 1.0)
    throw std::invalid_argument("psi: z must lie in [0,1]");
  if (z == 0.0) return 0.0;
  if (lambda < 1e-12) return z;  // T = 1 almost surely
  return -lambert_w0(-lambda * z * std::exp(-lambda)) / lambda;
}

double borel_pmf(double lambda, int k) {
  if (k < 1) throw std::invalid_argument("borel_pmf: k must be >= 1");
  if (!(lambda > 0.0))
    throw std::invalid_argument("borel_pmf: lambda must be > 0");
  if (k <= 50) {
    double val = std::exp(-lambda * k);
    for (int i = 1; i < k; ++i) val *= lambda * k / i;
    return val / k;  // (lambda k)^{k-1} / k! = prod/(k)
  }
  const double lk = lambda * static_cast<double>(k);
  return std::exp(-lk + (k - 1) * std::log(lk) - std::lgamma(k + 1.0));
}

double global_threshold_limit(const ModelParams& params, double lambda) {
  params.validate();
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  const double z = 1.0 - params.beta;
  const double decay = psi(lambda, z) / z;  // E[(1-beta)^{T-1}]
  return params.alpha * (1.0 - params.delta) /
         ((1.0 + params.alpha) * (1.0 - params.delta) +
          params.delta * params.beta * decay);
}

PsiDerivatives psi_derivatives_at(double lambda, double z) {
  PsiDerivatives d;
  d.value = psi(lambda, z);
  const double denom = 1.0 - lambda * d.value;
  if (std::abs(denom) < 1e-10)
    throw std::domain_error(
        "psi derivatives undefined near the critical point lambda*psi = 1 "
        "(lambda=" + std::to_string(lambda) + ", psi=" + std::to_string(d.value) +
        ")");
  d.first = d.value * (d.value - 1.0) / denom;
  d.second = d.first * (3.0 * d.value - 1.0 + lambda * d.first) / denom;
  return d;
}

}  // namespace socband
