#pragma once

#include "socband/model.hpp"

// Global-regime limit machinery: Lambert-W, the total-progeny generating
// function psi, the Borel law and the asymptotic exploration threshold.
namespace socband {

// Principal branch on [-1/e, 0], the domain the psi fixed point needs.
// Halley refinement from a branch-point/series initial guess.
double lambert_w0(double x);

// psi(z) = E[z^T; T < infinity] = -W0(-lambda z e^-lambda)/lambda for the
// total progeny T of a Poisson(lambda) branching process.
double psi(double lambda, double z);

// Borel mass P(T = k) = e^{-lambda k} (lambda k)^{k-1} / k!, log-space for
// large k.
double borel_pmf(double lambda, int k);

// Large-n exploration threshold in the global regime, Poisson limit of the
// component law. The infinite-progeny event contributes 0 to
// E[(1-beta)^{T-1}].
double global_threshold_limit(const ModelParams& params, double lambda);

struct PsiDerivatives {
  double value = 0.0;
  double first = 0.0;   // d psi / d lambda
  double second = 0.0;  // d^2 psi / d lambda^2
};

// Solved forms of the lambda-derivatives; throws near the critical point
// lambda * psi = 1.
PsiDerivatives psi_derivatives_at(double lambda, double z);

}  // namespace socband
