#include "fraclab/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fraclab {

namespace {

const double pi = 3.14159265358979323846;

/// Nodal slopes of the node samples: central inside, one-sided second order
/// at the ends, plain difference quotient when only one cell exists.
std::vector<double> node_slopes(const std::vector<double>& psi, double tau) {
    const int last = static_cast<int>(psi.size()) - 1;
    std::vector<double> d(psi.size());
    if (last == 1) {
        d[0] = d[1] = (psi[1] - psi[0]) / tau;
        return d;
    }
    d[0] = (-3.0 * psi[0] + 4.0 * psi[1] - psi[2]) / (2.0 * tau);
    for (int m = 1; m < last; ++m) d[m] = (psi[m + 1] - psi[m - 1]) / (2.0 * tau);
    d[last] = (3.0 * psi[last] - 4.0 * psi[last - 1] + psi[last - 2]) / (2.0 * tau);
    return d;
}

void check_sample_shapes(const char* who, const std::vector<double>& g,
                         const std::vector<double>& psi, double T) {
    if (psi.size() < 2) throw domain_error(std::string(who) + ": need at least two time samples");
    if (g.size() != psi.size())
        throw domain_error(std::string(who) + ": flux and temperature sample counts differ");
    if (!(T > 0.0)) throw domain_error(std::string(who) + ": T must be positive");
}

} // namespace

std::vector<double> jones_apply(const std::vector<double>& g, const std::vector<double>& psi,
                                double T, const std::vector<double>& a) {
    check_sample_shapes("jones_apply", g, psi, T);
    const int k_cells = static_cast<int>(psi.size()) - 1;
    if (static_cast<int>(a.size()) != k_cells)
        throw domain_error("jones_apply: coefficient needs one value per time cell");
    for (int m = 0; m < k_cells; ++m) {
        if (!(a[m] > 0.0))
            throw domain_error("jones_apply: coefficient not positive at cell index " +
                               std::to_string(m));
    }

    const double tau = T / k_cells;
    const std::vector<double> psid = node_slopes(psi, tau);
    const double root_pi = std::sqrt(pi);
    std::vector<double> out(k_cells);

    for (int k = 1; k <= k_cells; ++k) {
        // Walk the cells (t_m, t_{m+1}) from the observation time backwards,
        // carrying the tail integral s = int_{t}^{t_k} a. Substituting that
        // tail for the time variable makes the square-root factor a pure
        // power, so each cell integrates in closed form against the linear
        // interpolant of psi'.
        double s_hi = 0.0;
        double r_hi = 0.0;
        double denom = 0.0;
        for (int m = k - 1; m >= 0; --m) {
            const double s_lo = s_hi + a[m] * tau;
            const double r_lo = std::sqrt(s_lo);
            const double slope = (psid[m + 1] - psid[m]) / tau;
            const double c0 = psid[m + 1] + slope * s_hi / a[m];
            const double c1 = -slope / a[m];
            denom += (2.0 * c0 * (r_lo - r_hi) +
                      (2.0 / 3.0) * c1 * (s_lo * r_lo - s_hi * r_hi)) / a[m];
            s_hi = s_lo;
            r_hi = r_lo;
        }
        if (!(denom > 0.0))
            throw domain_error("jones_apply: nonpositive data integral at sample index " +
                               std::to_string(k));
        out[k - 1] = root_pi * g[k] / denom;
    }
    return out;
}

JonesResult jones_fixed_point(const std::vector<double>& g, const std::vector<double>& psi,
                              double T, int iterations) {
    check_sample_shapes("jones_fixed_point", g, psi, T);
    if (iterations < 0) throw domain_error("jones_fixed_point: iterations must be >= 0");
    if (psi[0] != 0.0)
        throw domain_error("jones_fixed_point: temperature must start at zero (sample index 0)");
    for (size_t m = 0; m + 1 < psi.size(); ++m) {
        if (!(psi[m + 1] > psi[m]))
            throw domain_error("jones_fixed_point: temperature not strictly increasing "
                               "(sample index " + std::to_string(m + 1) + ")");
    }
    if (g[0] < 0.0)
        throw domain_error("jones_fixed_point: flux data negative (sample index 0)");
    for (size_t m = 1; m < g.size(); ++m) {
        if (!(g[m] > 0.0))
            throw domain_error("jones_fixed_point: flux data not positive (sample index " +
                               std::to_string(m) + ")");
    }

    const int k_cells = static_cast<int>(psi.size()) - 1;
    JonesResult out;
    out.h_samples = jones_apply(g, psi, T, std::vector<double>(k_cells, 1.0));

    const auto h_band = std::minmax_element(out.h_samples.begin(), out.h_samples.end());
    out.clamp_lo = (*h_band.first) * (*h_band.first);
    out.clamp_hi = (*h_band.second) * (*h_band.second);

    std::vector<double> a(k_cells);
    for (int m = 0; m < k_cells; ++m) a[m] = out.h_samples[m] * out.h_samples[m];
    out.iterates.push_back(a);

    for (int pass = 0; pass < iterations; ++pass) {
        std::vector<double> next = jones_apply(g, psi, T, a);
        for (double& value : next) value = std::clamp(value, out.clamp_lo, out.clamp_hi);
        a = next;
        out.iterates.push_back(a);
    }
    return out;
}

} // namespace fraclab
