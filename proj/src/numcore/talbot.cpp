#include "fraclab/numcore.hpp"

#include <cmath>

namespace fraclab {

// Fixed Talbot contour z(theta) = r*theta*(cot theta + i), theta in (-pi, pi),
// with r scaled as 2*M/(5t). Trapezoidal sampling of the upper half plus the
// real point theta = 0 (the contour is conjugate-symmetric, so the lower half
// doubles the real part).
double talbot_invert(const std::function<Cplx(Cplx)>& transform, double t, int n_nodes) {
    if (!(t > 0.0)) throw domain_error("talbot_invert: time must be positive");
    if (n_nodes < 4) throw domain_error("talbot_invert: need at least 4 nodes");
    const double pi = 3.14159265358979323846;
    const int m = n_nodes;
    const double r = 2.0 * m / (5.0 * t);

    // theta = 0 endpoint: z = r, dz/dtheta contributes weight 1/2.
    Cplx f0 = transform(Cplx(r, 0.0));
    if (!std::isfinite(f0.real()) || !std::isfinite(f0.imag()))
        throw domain_error("talbot_invert: transform evaluated nonfinite at the contour vertex");
    double sum = 0.5 * std::exp(r * t) * f0.real();

    for (int k = 1; k < m; ++k) {
        const double theta = k * pi / m;
        const double cot = std::cos(theta) / std::sin(theta);
        const Cplx z(r * theta * cot, r * theta);
        // sigma = theta + (theta*cot - 1)*cot encodes dz/dtheta up to the i factor.
        const double sigma = theta + (theta * cot - 1.0) * cot;
        const Cplx fz = transform(z);
        if (!std::isfinite(fz.real()) || !std::isfinite(fz.imag()))
            throw domain_error("talbot_invert: transform evaluated nonfinite on the contour");
        const Cplx term = std::exp(z * t) * fz * Cplx(1.0, sigma);
        sum += term.real();
    }
    return sum * r / m;
}

} // namespace fraclab
