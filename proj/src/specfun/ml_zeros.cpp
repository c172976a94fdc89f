#include "fraclab/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fraclab/errors.hpp"

namespace fraclab {

namespace {

struct ZeroProblem {
    double beta;
    double w;
    MLEvalPolicy policy;

    Cplx f(Cplx lam) const { return ml(beta, w, -lam, policy); }
    Cplx fp(Cplx lam) const { return -ml_derivative(beta, w, -lam, policy); }
};

constexpr double kResidualTol = 1e-12;

// Deflated Newton iteration: solves f(lam) = 0 while repelling from the
// already-found zeros `known` (their conjugates must be in the list too).
bool newton_zero(const ZeroProblem& pb, const std::vector<Cplx>& known, Cplx seed, Cplx& out) {
    Cplx lam = seed;
    for (int iter = 0; iter < 100; ++iter) {
        Cplx fv, dv;
        try {
            fv = pb.f(lam);
            dv = pb.fp(lam);
        } catch (const std::exception&) {
            return false;
        }
        if (std::abs(fv) <= kResidualTol) {
            out = lam;
            return true;
        }
        Cplx corr = dv / fv;
        bool clash = false;
        for (const Cplx& mu : known) {
            Cplx d = lam - mu;
            if (std::abs(d) < 1e-9 * (1.0 + std::abs(mu))) {
                clash = true;
                break;
            }
            corr -= 1.0 / d;
        }
        if (clash || corr == Cplx(0.0, 0.0) || !std::isfinite(corr.real()) ||
            !std::isfinite(corr.imag()))
            return false;
        Cplx step = -1.0 / corr;
        // Trust-region style cap keeps early iterations from flying off.
        double cap = 0.5 * std::abs(lam) + 2.0;
        double slen = std::abs(step);
        if (slen > cap) step *= cap / slen;
        lam += step;
        if (lam.real() < -1.0) lam.real(-1.0); // zeros live in Re > 0
    }
    return false;
}

bool is_known(const std::vector<Cplx>& known, Cplx lam) {
    for (const Cplx& mu : known)
        if (std::abs(lam - mu) <= 1e-6 * (1.0 + std::abs(mu))) return true;
    return false;
}

} // namespace

std::vector<Cplx> ml_zeros(double beta, double weight_beta, int count) {
    if (!(beta > 1.0 && beta <= 2.0))
        throw domain_error("ml_zeros: beta must lie in (1, 2]");
    if (!(weight_beta == 2.0 || weight_beta == beta))
        throw domain_error("ml_zeros: weight must be 2 (Caputo) or beta (Riemann-Liouville)");
    if (count < 1 || count > 64)
        throw domain_error("ml_zeros: count must be between 1 and 64");

    ZeroProblem pb{beta, weight_beta, {}};
    if (beta < 2.0) {
        // Evaluation points -lambda cluster near the negative real axis, so
        // widen the branch sector to the midpoint of its admissible range.
        pb.policy.sector_mu = 0.5 * (beta * M_PI / 2.0 + std::min(M_PI, beta * M_PI));
    }

    // `known` holds every located zero including conjugates (for deflation);
    // `reps` holds one representative per zero: real ones, and the positive
    // imaginary member of each conjugate pair.
    std::vector<Cplx> known;
    std::vector<Cplx> reps;
    auto accept = [&](Cplx lam) {
        if (std::abs(lam) < 1e-8 || lam.real() < 0.0) return;
        if (std::fabs(lam.imag()) <= 1e-8 * std::abs(lam)) lam.imag(0.0);
        if (lam.imag() < 0.0) lam = std::conj(lam);
        if (is_known(known, lam)) return;
        reps.push_back(lam);
        known.push_back(lam);
        if (lam.imag() != 0.0) known.push_back(std::conj(lam));
    };

    // Phase 1: scan the real axis in the stretched variable y = lambda^{1/beta},
    // where consecutive real zeros keep O(1) spacing, and bisect sign changes.
    const double y_max = 2.0 * M_PI * (count + 4);
    const double y_step = 0.25;
    auto g = [&](double y) { return pb.f(Cplx(std::pow(y, beta), 0.0)).real(); };
    double y_prev = 0.05, g_prev = g(y_prev);
    for (double y = y_prev + y_step; y <= y_max; y += y_step) {
        double gy = g(y);
        if ((g_prev < 0.0) != (gy < 0.0)) {
            double a = y_prev, b = y, ga = g_prev;
            for (int it = 0; it < 60; ++it) {
                double m = 0.5 * (a + b);
                double gm = g(m);
                if ((ga < 0.0) == (gm < 0.0)) {
                    a = m;
                    ga = gm;
                } else {
                    b = m;
                }
            }
            Cplx lam;
            if (newton_zero(pb, {}, Cplx(std::pow(0.5 * (a + b), beta), 0.0), lam))
                accept(lam);
        }
        y_prev = y;
        g_prev = gy;
    }

    // Phase 2: ladder of complex seeds along the asymptotic zero curve
    // |lambda_j| ~ (2 pi j)^beta, arg lambda_j -> (2 - beta) pi / 2. Newton
    // runs deflated against everything found so far; each seed gets up to 10
    // deterministic ~5% perturbation retries.
    const double arg_lim = (2.0 - beta) * M_PI / 2.0;
    if (arg_lim > 1e-12) {
        for (int j = 1; j <= count + 6; ++j) {
            for (double off : {0.0, -0.25}) {
                double mod = std::pow(2.0 * M_PI * (j + off), beta);
                for (double frac : {1.0, 0.5, 0.25}) {
                    Cplx seed = std::polar(mod, arg_lim * frac);
                    for (int retry = 0; retry <= 10; ++retry) {
                        Cplx s = seed;
                        if (retry > 0) {
                            double r = 0.05 * retry / 10.0;
                            s *= Cplx(1.0 + r * std::cos(2.4 * retry), r * std::sin(2.4 * retry));
                        }
                        Cplx lam;
                        if (newton_zero(pb, known, s, lam)) {
                            accept(lam);
                            break;
                        }
                    }
                }
            }
        }
    }

    // Order by modulus; real zeros break ties ahead of complex ones.
    std::sort(reps.begin(), reps.end(), [](const Cplx& a, const Cplx& b) {
        double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        return a.imag() < b.imag();
    });

    std::vector<Cplx> result;
    for (const Cplx& lam : reps) {
        if ((int)result.size() >= count) break;
        result.push_back(lam);
        if (lam.imag() != 0.0 && (int)result.size() < count)
            result.push_back(std::conj(lam));
    }

    if ((int)result.size() < count) {
        std::ostringstream msg;
        msg << "ml_zeros: located only " << result.size() << " of " << count
            << " requested zeros for beta = " << beta << ", weight = " << weight_beta;
        throw convergence_error(msg.str());
    }
    for (const Cplx& lam : result) {
        if (std::abs(pb.f(lam)) > 1e-10)
            throw convergence_error("ml_zeros: residual check failed on a located zero");
    }
    return result;
}

} // namespace fraclab
