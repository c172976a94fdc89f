#include "fraclab/inverse.hpp"

#include <cmath>
#include <string>

#include "fraclab/specfun.hpp"

namespace fraclab {

namespace {

const double pi = 3.14159265358979323846;

double dirichlet_lambda(int j) { return (j * pi) * (j * pi); }

void check_mode_index(const char* who, int j) {
    if (j < 1) throw domain_error(std::string(who) + ": mode index must be >= 1");
}

/// Relaxation factor of one mode over time t: E_{alpha,1}(-lambda t^alpha).
double relaxation(double alpha, double lambda, double t) {
    return ml(alpha, 1.0, Cplx(-lambda * std::pow(t, alpha), 0.0)).real();
}

void check_modes(const char* who, double alpha, double T, const std::vector<SpectralData>& data) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw domain_error(std::string(who) + ": alpha must lie in (0, 1]");
    if (!(T >= 0.0)) throw domain_error(std::string(who) + ": T must be nonnegative");
    for (const SpectralData& d : data) {
        if (d.index < 1 || !(d.lambda > 0.0))
            throw domain_error(std::string(who) + ": modes need index >= 1 and lambda > 0");
    }
}

} // namespace

std::vector<SpectralData> sine_modes(const std::vector<double>& coefficients) {
    std::vector<SpectralData> modes(coefficients.size());
    for (size_t j = 0; j < coefficients.size(); ++j) {
        modes[j].index = static_cast<int>(j) + 1;
        modes[j].lambda = dirichlet_lambda(modes[j].index);
        modes[j].coefficient = coefficients[j];
    }
    return modes;
}

double critical_time(double alpha, int j_mode, double t_lo, double t_hi) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw domain_error("critical_time: alpha must lie strictly in (0, 1)");
    check_mode_index("critical_time", j_mode);
    if (!(t_lo > 0.0) || !(t_hi > t_lo))
        throw domain_error("critical_time: bracket must satisfy 0 < t_lo < t_hi");

    const double lambda = dirichlet_lambda(j_mode);
    auto gap = [&](double t) { return std::exp(-lambda * t) - relaxation(alpha, lambda, t); };
    auto gap_slope = [&](double t) {
        const double decay = -lambda * std::exp(-lambda * t);
        const double chain = lambda * alpha * std::pow(t, alpha - 1.0);
        const double inner = ml_derivative(alpha, 1.0, Cplx(-lambda * std::pow(t, alpha), 0.0)).real();
        return decay + chain * inner;
    };

    double lo = t_lo;
    double hi = t_hi;
    double d_lo = gap(lo);
    double d_hi = gap(hi);
    if (d_lo == 0.0) return lo;
    if (d_hi == 0.0) return hi;
    if ((d_lo > 0.0) == (d_hi > 0.0))
        throw domain_error("critical_time: no sign change on the bracket: D(" + csv_number(t_lo) +
                           ") = " + csv_number(d_lo) + ", D(" + csv_number(t_hi) +
                           ") = " + csv_number(d_hi));

    // Bisect until the bracket is tight enough for Newton to take over.
    for (int pass = 0; pass < 60 && hi - lo > 1e-9; ++pass) {
        const double mid = 0.5 * (lo + hi);
        const double d_mid = gap(mid);
        if (d_mid == 0.0) { lo = hi = mid; break; }
        if ((d_mid > 0.0) == (d_lo > 0.0)) {
            lo = mid;
            d_lo = d_mid;
        } else {
            hi = mid;
        }
    }

    double root = 0.5 * (lo + hi);
    for (int pass = 0; pass < 30; ++pass) {
        const double value = gap(root);
        const double slope = gap_slope(root);
        if (slope == 0.0) break;
        const double next = root - value / slope;
        if (!(next > lo) || !(next < hi)) break; // keep the bisection bracket authoritative
        if (std::abs(next - root) <= 1e-16 * root) {
            root = next;
            break;
        }
        root = next;
    }

    const double residual = std::abs(gap(root));
    if (residual >= 1e-10)
        throw tolerance_error("critical_time: root residual above tolerance", residual);
    return root;
}

GrowthFactors growth_factors(double alpha, int j_mode, double T) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw domain_error("growth_factors: alpha must lie in (0, 1]");
    check_mode_index("growth_factors", j_mode);
    if (!(T > 0.0)) throw domain_error("growth_factors: T must be positive");

    const double lambda = dirichlet_lambda(j_mode);
    const double e = relaxation(alpha, lambda, T);
    if (!(e > 0.0))
        throw domain_error("growth_factors: relaxation factor underflowed at T = " + csv_number(T));
    GrowthFactors out;
    out.classical = std::exp(lambda * T);
    out.fractional = 1.0 / e;
    return out;
}

std::vector<SpectralData> backward_reconstruct(double alpha, double T,
                                               const std::vector<SpectralData>& data) {
    check_modes("backward_reconstruct", alpha, T, data);
    std::vector<SpectralData> out = data;
    for (SpectralData& d : out) {
        const double e = relaxation(alpha, d.lambda, T);
        if (!(e > 0.0))
            throw domain_error("backward_reconstruct: relaxation factor underflowed at mode " +
                               std::to_string(d.index));
        d.coefficient /= e;
    }
    return out;
}

std::vector<SpectralData> source_space_reconstruct(double alpha, double T,
                                                   const std::vector<SpectralData>& data) {
    check_modes("source_space_reconstruct", alpha, T, data);
    if (!(T > 0.0)) throw domain_error("source_space_reconstruct: T must be positive");
    std::vector<SpectralData> out = data;
    for (SpectralData& d : out) {
        const double divisor = 1.0 - relaxation(alpha, d.lambda, T);
        if (!(divisor > 0.0))
            throw domain_error("source_space_reconstruct: vanishing divisor at mode " +
                               std::to_string(d.index));
        d.coefficient *= d.lambda / divisor;
    }
    return out;
}

} // namespace fraclab
