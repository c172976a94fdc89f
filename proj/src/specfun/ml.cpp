#include "fraclab/specfun.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fraclab/errors.hpp"

namespace fraclab {

namespace {

using quad = __float128;

// Accuracy targets: at least 10 significant digits when the value has usable
// magnitude, with an absolute floor so evaluation stays meaningful right at
// zeros of E (Newton iterations probe those).
constexpr double kTargetRel = 1e-11;
constexpr double kTargetAbs = 5e-13;

struct QC {
    quad re, im;
};

QC qc_mul(const QC& a, const QC& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

quad qc_abs(const QC& a) { return hypotq(a.re, a.im); }

void neumaier_add(quad& s, quad& c, quad x) {
    quad t = s + x;
    if (fabsq(s) >= fabsq(x))
        c += (s - t) + x;
    else
        c += (x - t) + s;
    s = t;
}

quad sin_pi_q(quad x) {
    quad n = nearbyintq(x);
    quad r = x - n;
    quad s = sinq(M_PIq * r);
    return ((long long)n % 2 == 0) ? s : -s;
}

// 1/Gamma(x) in binary128; 0 at the poles.
quad rgamma_q(quad x) {
    if (x >= 0.5q) {
        if (x > 1700.0q) return expq(-lgammaq(x));
        return 1.0q / tgammaq(x);
    }
    if (x == nearbyintq(x)) return 0.0q;
    quad s = sin_pi_q(x);
    quad lg = lgammaq(1.0q - x);
    if (lg > 11000.0q) return (s > 0 ? 1.0q : -1.0q) * expq(11000.0q);
    return s * expq(lg) / M_PIq;
}

double sin_pi_d(double x) {
    double n = std::nearbyint(x);
    double r = x - n;
    double s = std::sin(M_PI * r);
    return (static_cast<long long>(n) % 2 == 0) ? s : -s;
}

// log|1/Gamma(x)| and sign(1/Gamma(x)); sign 0 marks a pole of Gamma. The
// log-space form keeps the algebraic expansion usable far beyond the double
// range of Gamma itself.
void rgamma_log(double x, double& log_mag, int& sign) {
    if (x >= 0.5) {
        log_mag = -std::lgamma(x);
        sign = 1;
        return;
    }
    if (x == std::floor(x)) {
        log_mag = -std::numeric_limits<double>::infinity();
        sign = 0;
        return;
    }
    double s = sin_pi_d(x);
    log_mag = std::log(std::fabs(s)) - std::log(M_PI) + std::lgamma(1.0 - x);
    sign = (s > 0.0) ? 1 : -1;
}

double rgamma_d(double x) {
    double lm;
    int sg;
    rgamma_log(x, lm, sg);
    if (sg == 0) return 0.0;
    return sg * std::exp(lm);
}

struct EvalAttempt {
    Cplx value{0.0, 0.0};
    double abs_est = std::numeric_limits<double>::infinity();
    bool attempted = false;
};

bool attempt_ok(const EvalAttempt& a) {
    return a.attempted && std::isfinite(a.abs_est) &&
           a.abs_est <= std::max(kTargetRel * std::abs(a.value), kTargetAbs);
}

// Power series in binary128 with compensated accumulation and an a-posteriori
// error estimate that charges every term with its rounding contribution (the
// dominant loss is cancellation: max|term| sets the noise floor).
//
// derivative = false: sum_{k>=0} z^k / Gamma(alpha k + beta)
// derivative = true:  sum_{k>=1} k z^{k-1} / Gamma(alpha k + beta)
EvalAttempt ml_series(double alpha, double beta, Cplx z, double series_tol, bool derivative) {
    EvalAttempt out;
    out.attempted = true;
    const quad eps = FLT128_EPSILON;
    QC zq{(quad)z.real(), (quad)z.imag()};
    QC sum{0.0q, 0.0q}, comp{0.0q, 0.0q};
    if (derivative)
        sum.re = rgamma_q((quad)alpha + (quad)beta);
    else
        sum.re = rgamma_q((quad)beta);
    QC zp{1.0q, 0.0q};
    quad max_term = qc_abs(sum);
    quad err_acc = max_term * eps;
    quad prev_mag = max_term;
    quad last_mag = 0.0q;
    bool past_peak = false;
    bool converged = false;
    const quad stop_tol = (quad)std::max(series_tol, 1e-33);
    const int start_k = derivative ? 2 : 1;
    const int max_terms = 6000;
    for (int k = start_k; k <= max_terms + start_k; ++k) {
        zp = qc_mul(zp, zq);
        quad g = rgamma_q((quad)alpha * k + (quad)beta);
        QC term{zp.re * g, zp.im * g};
        if (derivative) {
            term.re *= (quad)k;
            term.im *= (quad)k;
        }
        neumaier_add(sum.re, comp.re, term.re);
        neumaier_add(sum.im, comp.im, term.im);
        quad mag = qc_abs(term);
        if (mag > max_term) max_term = mag;
        err_acc += mag * eps * 8.0q;
        if (k > start_k && mag < prev_mag) past_peak = true;
        prev_mag = mag;
        last_mag = mag;
        if (mag > 1e4800q) break; // approaching binary128 overflow
        quad smag = hypotq(sum.re + comp.re, sum.im + comp.im);
        if (past_peak && mag <= stop_tol * smag) {
            converged = true;
            break;
        }
        if (past_peak && mag < 1e-4900q) {
            converged = true;
            break;
        }
    }
    QC total{sum.re + comp.re, sum.im + comp.im};
    out.value = Cplx((double)total.re, (double)total.im);
    if (converged) {
        quad abs_err = err_acc + max_term * eps * 4.0q + last_mag * 2.0q;
        out.abs_est = (double)abs_err;
    }
    return out;
}

// Exponential-plus-algebraic expansion for large |z|, alpha in (0, 2):
//
//   E = (1/alpha) sum_n zeta_n^{1-beta} e^{zeta_n}
//       - sum_{k=1}^{N} z^{-k} / Gamma(beta - alpha k) + remainder,
//
// where zeta_n = |z|^{1/alpha} e^{i (arg z + 2 pi n)/alpha} runs over the
// saddles on the principal sheet, i.e. n with arg z + 2 pi n in (-alpha pi,
// alpha pi]. For |arg z| inside the branch sector this is the single growing
// exponential of the textbook form; the remaining saddles are exponentially
// small and keeping them preserves accuracy right up to the cut, which the
// zero finder depends on. Algebraic terms run in log space so that
// Gamma(beta - alpha k) can leave the double range, and the sum is truncated
// at its smallest term.
EvalAttempt ml_asym(double alpha, double beta, Cplx z, int term_cap) {
    EvalAttempt out;
    if (alpha > 2.0 || std::abs(z) < 1.0) return out;
    out.attempted = true;

    const double az = std::abs(z);
    const double th = std::arg(z);
    const double lnaz = std::log(az);

    Cplx alg(0.0, 0.0);
    double alg_abs = 0.0;
    double trunc_est = 0.0;
    double prev_mag = std::numeric_limits<double>::infinity();
    bool any_nonzero = false;
    bool growth_break = false;
    // For integer alpha <= 2 with integer beta the Gamma poles silence every
    // term with beta - alpha k a nonpositive integer, so the algebraic sum is
    // finite and exact.
    const bool alg_terminates =
        (alpha == std::floor(alpha) && alpha <= 2.0 && beta == std::floor(beta));
    for (int k = 1; k <= term_cap; ++k) {
        double lgm;
        int sgn;
        rgamma_log(beta - alpha * k, lgm, sgn);
        if (sgn == 0) continue;
        any_nonzero = true;
        double term_ln = -k * lnaz + lgm;
        if (term_ln > 600.0) {
            trunc_est = std::numeric_limits<double>::infinity();
            break;
        }
        double mag = std::exp(term_ln);
        if (mag >= prev_mag) {
            trunc_est = mag; // first omitted term of the optimal truncation
            growth_break = true;
            break;
        }
        double ph = -k * th;
        alg += (sgn * mag) * Cplx(std::cos(ph), std::sin(ph));
        alg_abs += mag;
        prev_mag = mag;
        trunc_est = mag;
        if (mag <= 1e-18 * (std::abs(alg) + mag)) break;
    }
    if (alg_terminates && !growth_break) trunc_est = 0.0;
    if (!any_nonzero && !alg_terminates) trunc_est = std::numeric_limits<double>::infinity();

    const double L = std::pow(az, 1.0 / alpha);
    const double lnL = lnaz / alpha;

    Cplx expo(0.0, 0.0);
    double expo_abs = 0.0;
    for (int j = -2; j <= 2; ++j) {
        double theta_j = th + 2.0 * M_PI * j;
        // Half-open sheet condition so the cut at arg z = pi is not counted
        // from both sides.
        if (!(theta_j > -M_PI * alpha && theta_j <= M_PI * alpha * (1.0 + 1e-15))) continue;
        double phi = theta_j / alpha; // arg of the saddle zeta_j
        Cplx eln = Cplx((1.0 - beta) * lnL + L * std::cos(phi),
                        (1.0 - beta) * phi + L * std::sin(phi));
        if (eln.real() > 709.0) {
            // Genuine double overflow: the value is infinite in this range.
            out.value = Cplx(std::numeric_limits<double>::infinity() * std::cos(eln.imag()),
                             std::numeric_limits<double>::infinity() * std::sin(eln.imag()));
            out.abs_est = 0.0;
            return out;
        }
        Cplx t = std::exp(eln) / alpha;
        expo += t;
        expo_abs += std::abs(t);
    }

    // Smooth switching of saddle coefficients across the sheet boundary is
    // not modeled; charge one unit of the boundary-saddle magnitude for it.
    double stokes_guard = std::exp(-L + std::fabs(1.0 - beta) * std::log(std::max(L, 1.0))) / alpha;

    out.value = expo - alg;
    out.abs_est = 3.0 * trunc_est + stokes_guard + 1e-15 * (expo_abs + alg_abs);
    return out;
}

// ln(max|term| / |result|) prediction for the series; used only to skip
// attempts that binary128 cannot possibly certify.
double cancellation_exponent(double alpha, Cplx z) {
    double az = std::abs(z);
    double L = std::pow(az, 1.0 / alpha);
    double phi = std::fabs(std::arg(z)) / alpha;
    double result_ln;
    if (phi <= 0.5 * M_PI)
        result_ln = L * std::cos(phi); // exponential branch dominates
    else
        result_ln = -std::log(az) - 10.0; // algebraic scale, with slack
    return L - std::min(result_ln, L);
}

void validate_common(double alpha, double beta, const MLEvalPolicy& policy) {
    if (!(alpha > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw domain_error("ml: requires finite beta and alpha > 0");
    if (!(policy.series_radius > 0.0) || !(policy.asympt_radius >= policy.series_radius))
        throw domain_error("ml: policy radii must satisfy 0 < series_radius <= asympt_radius");
    if (!(policy.series_tol > 0.0) || policy.asympt_terms < 1)
        throw domain_error("ml: policy requires series_tol > 0 and asympt_terms >= 1");
    if (policy.sector_mu != 0.0 && alpha < 2.0) {
        double lo = alpha * M_PI / 2.0;
        double hi = std::min(M_PI, alpha * M_PI);
        if (!(policy.sector_mu > lo && policy.sector_mu < hi))
            throw domain_error("ml: sector_mu must lie in (alpha*pi/2, min(pi, alpha*pi))");
    }
}

[[noreturn]] void throw_nonconvergence(const char* what, Cplx z, const EvalAttempt& s,
                                       const EvalAttempt& a) {
    std::ostringstream msg;
    msg << what << ": neither series nor asymptotic evaluation reached the accuracy target at z = ("
        << z.real() << ", " << z.imag() << ")";
    double best = std::numeric_limits<double>::infinity();
    if (s.attempted) best = std::min(best, s.abs_est);
    if (a.attempted) best = std::min(best, a.abs_est);
    if (std::isfinite(best)) msg << "; best absolute error estimate " << best;
    throw convergence_error(msg.str());
}

Cplx evaluate(double alpha, double beta, Cplx z, const MLEvalPolicy& policy, bool derivative) {
    validate_common(alpha, beta, policy);
    if (z == Cplx(0.0, 0.0))
        return Cplx(rgamma_d(derivative ? alpha + beta : beta), 0.0);

    double az = std::abs(z);
    bool series_feasible = cancellation_exponent(alpha, z) <= 60.0;
    bool series_first = az < policy.asympt_radius; // series leads inside the annulus too

    EvalAttempt s, a;
    auto try_series = [&]() {
        if (series_feasible) s = ml_series(alpha, beta, z, policy.series_tol, derivative);
    };
    auto try_asym = [&]() {
        if (!derivative) a = ml_asym(alpha, beta, z, policy.asympt_terms);
    };

    if (series_first) {
        try_series();
        if (attempt_ok(s)) return s.value;
        try_asym();
        if (attempt_ok(a)) return a.value;
    } else {
        try_asym();
        if (attempt_ok(a)) return a.value;
        try_series();
        if (attempt_ok(s)) return s.value;
    }

    if (derivative) {
        // Fall back to the shift identity, which reuses the full dispatcher:
        //   E' = (E_{alpha,beta-1}(z) - (beta-1) E_{alpha,beta}(z)) / (alpha z)
        Cplx num = ml(alpha, beta - 1.0, z, policy) - (beta - 1.0) * ml(alpha, beta, z, policy);
        return num / (alpha * z);
    }
    throw_nonconvergence("ml", z, s, a);
}

} // namespace

double ml_default_sector(double alpha) {
    if (alpha >= 2.0) return 0.0;
    double lo = alpha * M_PI / 2.0;
    double hi = std::min(M_PI, alpha * M_PI);
    double v = 0.75 * hi;
    if (v > lo && v < hi) return v;
    return 0.5 * (lo + hi);
}

Cplx ml(double alpha, double beta, Cplx z, const MLEvalPolicy& policy) {
    return evaluate(alpha, beta, z, policy, false);
}

Cplx ml_derivative(double alpha, double beta, Cplx z, const MLEvalPolicy& policy) {
    return evaluate(alpha, beta, z, policy, true);
}

} // namespace fraclab
