#include "fraclab/specfun.hpp"

#include <cmath>

#include "fraclab/errors.hpp"

namespace fraclab {

namespace {

// sin(pi*x) with argument reduction done on x itself, so the result stays
// accurate for |x| far beyond where sin(M_PI * x) loses the phase.
double sin_pi(double x) {
    double n = std::nearbyint(x);
    double r = x - n;
    double s = std::sin(M_PI * r);
    return (static_cast<long long>(n) % 2 == 0) ? s : -s;
}

// Lanczos approximation, g = 7, 9 coefficients. Relative error of the
// rational part is a few ulps for arguments >= 0.5.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double gamma_positive(double x) {
    // Valid for x >= 0.5.
    double a = kLanczos[0];
    for (int k = 1; k < 9; ++k) a += kLanczos[k] / (x - 1.0 + k);
    double t = x + kLanczosG - 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, x - 0.5) * std::exp(-t) * a;
}

} // namespace

double gamma_fn(double x) {
    if (!std::isfinite(x)) throw domain_error("gamma_fn: argument must be finite");
    if (x >= 0.5) return gamma_positive(x);
    if (x == std::floor(x)) throw domain_error("gamma_fn: pole at nonpositive integer argument");
    // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)).
    double s = sin_pi(x);
    return M_PI / (s * gamma_positive(1.0 - x));
}

} // namespace fraclab
