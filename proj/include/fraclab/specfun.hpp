#pragma once

#include <vector>

#include "fraclab/numcore.hpp"

namespace fraclab {

/// Region and branch controls for the Mittag-Leffler evaluator.
///
/// The evaluator treats series_radius / asympt_radius as region hints: inside
/// series_radius the power series is tried first, outside asympt_radius the
/// asymptotic expansion is tried first, and in between the series (summed in
/// binary128 with compensation) leads. Whichever evaluator is predicted to
/// miss the accuracy target falls back to the other; if neither can reach it,
/// ml() raises convergence_error.
struct MLEvalPolicy {
    double series_radius = 5.0;  // |z| threshold for the plain series region
    double asympt_radius = 25.0; // |z| threshold for the asymptotic region
    int asympt_terms = 80;       // cap on algebraic expansion terms
    double series_tol = 1e-16;   // next-term stopping threshold for the series
    double sector_mu = 0.0;      // branch sector in radians; 0 = order-dependent default
};

/// Default branch sector for order alpha: 0.75*min(pi, alpha*pi) when that
/// lies strictly inside (alpha*pi/2, min(pi, alpha*pi)), otherwise the sector
/// midpoint. For alpha >= 2 the admissible sector is empty and the evaluator
/// is series-only; this returns 0 there.
double ml_default_sector(double alpha);

/// Euler Gamma function for real x outside the poles {0, -1, -2, ...}.
double gamma_fn(double x);

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z), alpha > 0.
Cplx ml(double alpha, double beta, Cplx z, const MLEvalPolicy& policy = {});

/// Derivative dE_{alpha,beta}/dz.
Cplx ml_derivative(double alpha, double beta, Cplx z, const MLEvalPolicy& policy = {});

/// The first `count` zeros lambda of E_{beta,w}(-lambda) for beta in (1,2],
/// w = 2 or w = beta, ordered by increasing modulus. Complex zeros come in
/// conjugate pairs and both members are returned (positive imaginary part
/// first); real zeros appear once.
std::vector<Cplx> ml_zeros(double beta, double weight_beta, int count);

/// Wright function parameters in the negative-order regime.
struct WrightParams {
    double rho; // in (-1, 0)
    double mu;  // weight; the integral representation requires mu < 1
};

/// Wright function W_{rho,mu}(-x) for x >= 0 via the real integral
/// representation (oscillatory kernel, binary128 panel quadrature).
double wright_neg(const WrightParams& params, double x);

/// Free-space fundamental solution of time-fractional diffusion on the line:
/// K_alpha(x, t) = (1/2) t^{-alpha/2} W_{-alpha/2, 1-alpha/2}(-|x| t^{-alpha/2}).
double fundamental_solution(double alpha, double x, double t);

} // namespace fraclab
