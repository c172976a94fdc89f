#include "fraclab/sfd.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "fraclab/errors.hpp"
#include "src/sfd/petrov_detail.hpp"

namespace fraclab {

namespace {

void validate_domain(const char* who, double beta, const Grid1D& grid) {
    if (!(beta > 1.0) || !(beta < 2.0)) {
        throw domain_error(std::string(who) + ": beta must lie strictly inside (1, 2)");
    }
    if (grid.a != 0.0 || grid.b != 1.0) {
        // The x^{1-beta} test-space weight and the 1-x lifting are tied to the
        // unit interval.
        throw domain_error(std::string(who) + ": grid must span [0, 1]");
    }
    if (grid.n_cells < 2) {
        throw domain_error(std::string(who) + ": grid needs at least 2 cells");
    }
}

// (x^{1-beta}, phi_i) by exact antiderivatives of x^{2-beta} and x^{1-beta}
// over the two support cells, divided by (x^{1-beta}, 1-x) = 1/(2-beta) -
// 1/(3-beta). This evaluates the defining condition directly; the collapsed
// closed form h^{2-beta}((i-1)^{3-beta} + (i+1)^{3-beta} - 2 i^{3-beta}) is
// kept only as a cross-check.
std::vector<double> gamma_from_condition(double beta, int n) {
    const double h = 1.0 / n;
    const double p2 = 2.0 - beta;
    const double p3 = 3.0 - beta;
    const double den = 1.0 / p2 - 1.0 / p3;
    std::vector<double> gamma(n - 1);
    for (int i = 1; i < n; ++i) {
        const double xm = (i - 1) * h;
        const double xi = i * h;
        const double xp = (i + 1) * h;
        const double rising = (std::pow(xi, p3) - std::pow(xm, p3)) / p3 -
                              xm * (std::pow(xi, p2) - std::pow(xm, p2)) / p2;
        const double falling = xp * (std::pow(xp, p2) - std::pow(xi, p2)) / p2 -
                               (std::pow(xp, p3) - std::pow(xi, p3)) / p3;
        gamma[i - 1] = (rising + falling) / (h * den);
    }
    return gamma;
}

double gamma_closed_form(double beta, int n, int i) {
    const double p3 = 3.0 - beta;
    return std::pow(1.0 / n, 2.0 - beta) *
           (std::pow(i - 1.0, p3) + std::pow(i + 1.0, p3) - 2.0 * std::pow(double(i), p3));
}

// Re-verifies (x^{1-beta}, phi_i - gamma_i (1-x)) = 0 by quadrature that is
// independent of the assembly formulas: Gauss-Jacobi for the weight on the
// first cell, Gauss-Legendre elsewhere, with the three cells nearest the
// weight singularity subdivided. Accumulates in long double so the check is
// not limited by summation roundoff for beta near 2, where the weight mass
// 1/((2-beta)(3-beta)) is large.
void verify_orthogonality(double beta, int n, const std::vector<double>& gamma) {
    const double h = 1.0 / n;
    const QuadRule jacobi = gauss_jacobi(12, 1.0 - beta);
    const QuadRule gl = gauss_legendre(12);
    double worst = 0.0;
    for (int i = 1; i < n; ++i) {
        const double xi = i * h;
        const double gi = gamma[i - 1];
        auto test_fn = [&](double x) {
            const double hat = std::max(0.0, 1.0 - std::abs(x - xi) / h);
            return hat - gi * (1.0 - x);
        };
        long double acc = 0.0L;
        for (size_t m = 0; m < jacobi.nodes.size(); ++m) {
            acc += static_cast<long double>(jacobi.weights[m] * test_fn(h * jacobi.nodes[m]));
        }
        acc *= std::pow((long double)h, (long double)(2.0 - beta));
        for (int c = 1; c < n; ++c) {
            const int panels = c <= 3 ? 4 : 1;
            const double ph = h / panels;
            for (int p = 0; p < panels; ++p) {
                const double a = c * h + p * ph;
                for (size_t m = 0; m < gl.nodes.size(); ++m) {
                    const double x = a + 0.5 * ph * (gl.nodes[m] + 1.0);
                    acc += static_cast<long double>(0.5 * ph * gl.weights[m] *
                                                    std::pow(x, 1.0 - beta) * test_fn(x));
                }
            }
        }
        worst = std::max(worst, std::abs(static_cast<double>(acc)));
    }
    if (worst > 1e-10) {
        throw tolerance_error("fem_assemble: test-space orthogonality residual", worst);
    }
}

// Potential term (q phi_j, tilde phi_i), 4-point Gauss-Legendre per cell,
// split as a tridiagonal trial-test part minus the rank-one gamma correction.
void add_potential(DenseMatrix& a, int n, const std::vector<double>& gamma,
                   const std::function<double(double)>& q) {
    const double h = 1.0 / n;
    const QuadRule gl = gauss_legendre(4);
    DenseMatrix tri(n - 1, n - 1);
    std::vector<double> colq(n - 1, 0.0); // (q phi_j, 1-x)
    for (int c = 0; c < n; ++c) {
        for (size_t m = 0; m < gl.nodes.size(); ++m) {
            const double x = (c + 0.5 * (gl.nodes[m] + 1.0)) * h;
            const double w = 0.5 * h * gl.weights[m] * q(x);
            for (int j = c; j <= c + 1; ++j) {
                if (j < 1 || j > n - 1) {
                    continue;
                }
                const double pj = 1.0 - std::abs(x - j * h) / h;
                colq[j - 1] += w * pj * (1.0 - x);
                for (int i = c; i <= c + 1; ++i) {
                    if (i < 1 || i > n - 1) {
                        continue;
                    }
                    tri(i - 1, j - 1) += w * pj * (1.0 - std::abs(x - i * h) / h);
                }
            }
        }
    }
    for (int i = 0; i < n - 1; ++i) {
        for (int j = 0; j < n - 1; ++j) {
            a(i, j) += tri(i, j) - gamma[i] * colq[j];
        }
    }
}

} // namespace

FemSystem fem_assemble(double beta, const Grid1D& grid, const std::function<double(double)>& q) {
    validate_domain("fem_assemble", beta, grid);
    const int n = grid.n_cells;
    const double h = grid.h();
    const double p3 = 3.0 - beta;

    FemSystem sys;
    sys.beta = beta;
    sys.grid = grid;
    sys.gamma = gamma_from_condition(beta, n);
    for (int i = 1; i < n; ++i) {
        sys.gamma_discrepancy = std::max(
            sys.gamma_discrepancy, std::abs(sys.gamma[i - 1] - gamma_closed_form(beta, n, i)));
    }
    verify_orthogonality(beta, n, sys.gamma);

    // Leading fractional block. Both half-order Riemann-Liouville derivatives
    // of a hat are (1, -2, 1) combinations of shifted (.)_+^{1-beta/2} powers,
    // and each cross product integrates to B(2-beta/2, 2-beta/2) times a power
    // of the node gap, so the whole block reduces to lookups in d^{3-beta}.
    std::vector<double> pw(n + 1, 0.0);
    for (int d = 1; d <= n; ++d) {
        pw[d] = std::pow(double(d), p3);
    }
    static const double sten[3] = {1.0, -2.0, 1.0};
    std::vector<double> toeplitz(2 * n - 3); // index m + n - 2, m = i - j
    for (int m = -(n - 2); m <= n - 2; ++m) {
        double s = 0.0;
        for (int r = -1; r <= 1; ++r) {
            for (int t = -1; t <= 1; ++t) {
                const int d = m + t - r;
                if (d > 0) {
                    s += sten[r + 1] * sten[t + 1] * pw[d];
                }
            }
        }
        toeplitz[m + n - 2] = s;
    }
    std::vector<double> lift(n - 1); // sum_r c_r (n - j - r)_+^{3-beta}
    for (int j = 1; j < n; ++j) {
        double s = 0.0;
        for (int r = -1; r <= 1; ++r) {
            const int d = n - j - r;
            if (d > 0) {
                s += sten[r + 1] * pw[d];
            }
        }
        lift[j - 1] = s;
    }
    const double lead = -std::pow(h, 1.0 - beta) / std::tgamma(4.0 - beta);
    const double corr = std::pow(h, 2.0 - beta) / std::tgamma(4.0 - beta);
    sys.stiffness = DenseMatrix(n - 1, n - 1);
    parallel_for(n - 1, [&](int i) {
        for (int j = 0; j < n - 1; ++j) {
            sys.stiffness(i, j) = lead * toeplitz[i - j + n - 2] + corr * sys.gamma[i] * lift[j];
        }
    });
    if (q) {
        add_potential(sys.stiffness, n, sys.gamma, q);
    }

    sys.mass = DenseMatrix(n - 1, n - 1);
    for (int i = 0; i < n - 1; ++i) {
        sys.mass(i, i) = 2.0 * h / 3.0;
        if (i + 1 < n - 1) {
            sys.mass(i, i + 1) = h / 6.0;
            sys.mass(i + 1, i) = h / 6.0;
        }
    }
    return sys;
}

namespace sfd_detail {

std::vector<double> petrov_load(const FemSystem& sys, const std::function<double(double)>& f) {
    const int n = sys.grid.n_cells;
    std::vector<double> load(n - 1, 0.0);
    if (!f) {
        return load;
    }
    const double h = sys.grid.h();
    const QuadRule gl = gauss_legendre(4);
    double against_lift = 0.0; // (f, 1-x)
    for (int c = 0; c < n; ++c) {
        for (size_t m = 0; m < gl.nodes.size(); ++m) {
            const double x = (c + 0.5 * (gl.nodes[m] + 1.0)) * h;
            const double w = 0.5 * h * gl.weights[m] * f(x);
            against_lift += w * (1.0 - x);
            for (int j = c; j <= c + 1; ++j) {
                if (j >= 1 && j <= n - 1) {
                    load[j - 1] += w * (1.0 - std::abs(x - j * h) / h);
                }
            }
        }
    }
    for (int j = 0; j < n - 1; ++j) {
        load[j] -= sys.gamma[j] * against_lift;
    }
    return load;
}

DenseMatrix petrov_mass(const FemSystem& sys) {
    const int n = sys.grid.n_cells;
    const double h = sys.grid.h();
    DenseMatrix m = sys.mass;
    for (int i = 0; i < n - 1; ++i) {
        for (int j = 0; j < n - 1; ++j) {
            m(i, j) -= sys.gamma[i] * h * (1.0 - (j + 1) * h); // (phi_j, 1-x) = h (1 - x_j)
        }
    }
    return m;
}

} // namespace sfd_detail

std::vector<double> steady_solve(const FemSystem& sys, const std::function<double(double)>& f) {
    const int n = sys.grid.n_cells;
    const LuFactorization lu(sys.stiffness);
    const std::vector<double> coeff = lu.apply(sfd_detail::petrov_load(sys, f));
    std::vector<double> u(n + 1, 0.0);
    for (int i = 1; i < n; ++i) {
        u[i] = coeff[i - 1];
    }
    return u;
}

} // namespace fraclab
