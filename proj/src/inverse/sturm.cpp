#include "fraclab/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fraclab/specfun.hpp"

namespace fraclab {

namespace {

Cplx mode_shape(double beta, SturmVariant variant, Cplx lambda, double x) {
    if (variant == SturmVariant::caputo) return x * ml(beta, 2.0, -lambda * std::pow(x, beta));
    return std::pow(x, beta - 1.0) * ml(beta, beta, -lambda * std::pow(x, beta));
}

} // namespace

std::vector<SturmLiouvilleMode> sturm_liouville_spectrum(double beta, SturmVariant variant,
                                                         int count) {
    const double weight = variant == SturmVariant::caputo ? 2.0 : beta;
    const std::vector<Cplx> zeros = ml_zeros(beta, weight, count);

    std::vector<SturmLiouvilleMode> modes(zeros.size());
    for (size_t j = 0; j < zeros.size(); ++j) {
        const Cplx lambda = zeros[j];
        modes[j].lambda = lambda;
        modes[j].eigenfunction = [beta, variant, lambda](double x) {
            return mode_shape(beta, variant, lambda, x);
        };
        const double residual = std::abs(mode_shape(beta, variant, lambda, 1.0));
        if (residual >= 1e-8)
            throw tolerance_error("sturm_liouville_spectrum: boundary residual of mode " +
                                      std::to_string(j + 1) + " out of tolerance",
                                  residual);
    }
    return modes;
}

CauchyGrowthSample cauchy_growth_demo(double beta, int j, double y) {
    if (j < 1) throw domain_error("cauchy_growth_demo: mode index must be >= 1");
    if (!(y > 0.0) || y > 1.0)
        throw domain_error("cauchy_growth_demo: height must lie in (0, 1]");

    // Zeros come ordered by modulus with both members of each conjugate pair
    // present; the pair members give identical magnitudes below, so only the
    // upper-half-plane representatives count as distinct modes.
    const std::vector<Cplx> zeros = ml_zeros(beta, 2.0, std::min(64, 2 * j));
    Cplx lambda(0.0, 0.0);
    int found = 0;
    for (const Cplx& zero : zeros) {
        if (zero.imag() < 0.0) continue;
        ++found;
        if (found == j) {
            lambda = zero;
            break;
        }
    }
    if (found < j)
        throw domain_error("cauchy_growth_demo: mode index exceeds the available zero budget");

    CauchyGrowthSample out;
    const Grid1D grid(0.0, 1.0, 400);
    for (int i = 0; i <= grid.n_cells; ++i) {
        const double x = grid.node(i);
        const double data_value = std::abs(x * ml(beta, 2.0, -lambda * std::pow(x, beta)) / lambda);
        out.data_norm = std::max(out.data_norm, data_value);
    }
    const Cplx across = 0.5 * ml(beta, 2.0, -lambda * std::pow(0.5, beta));
    const Cplx upward = y * ml(beta, 2.0, lambda * std::pow(y, beta));
    out.solution_magnitude = std::abs(across * upward / (lambda * lambda));
    return out;
}

} // namespace fraclab
