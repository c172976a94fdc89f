#include "fraclab/tfd.hpp"

#include <cmath>

#include "fraclab/specfun.hpp"

namespace fraclab {

double sideways_kernel(double alpha, double L, double s) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw domain_error("sideways_kernel: alpha must lie in (0, 1]");
    if (!(L > 0.0)) throw domain_error("sideways_kernel: L must be positive");
    if (!(s > 0.0)) throw domain_error("sideways_kernel: s must be positive");

    if (alpha == 1.0) {
        // Lateral heat kernel; evaluated in log space so the s -> 0+ limit
        // underflows to zero instead of producing 0 * inf.
        const double ln =
            std::log(L / (2.0 * std::sqrt(M_PI))) - 1.5 * std::log(s) - L * L / (4.0 * s);
        return std::exp(ln);
    }
    WrightParams params{-0.5 * alpha, 1.0 - alpha};
    return std::pow(s, -alpha) * wright_neg(params, L * std::pow(s, -0.5 * alpha));
}

} // namespace fraclab
