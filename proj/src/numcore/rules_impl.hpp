#pragma once

// Scalar-templated Gauss rule construction shared by the double-precision
// public API (numcore) and the binary128 internals of the Wright integrator.

#include <quadmath.h>

#include <cmath>
#include <vector>

#include "fraclab/errors.hpp"

namespace fraclab {
namespace rules {

inline double ri_fabs(double x) { return std::fabs(x); }
inline double ri_hypot(double a, double b) { return std::hypot(a, b); }
inline double ri_sqrt(double x) { return std::sqrt(x); }
inline double ri_pow(double a, double b) { return std::pow(a, b); }
inline __float128 ri_fabs(__float128 x) { return fabsq(x); }
inline __float128 ri_hypot(__float128 a, __float128 b) { return hypotq(a, b); }
inline __float128 ri_sqrt(__float128 x) { return sqrtq(x); }
inline __float128 ri_pow(__float128 a, __float128 b) { return powq(a, b); }

template <typename Real>
struct ri_const;

template <>
struct ri_const<double> {
    static constexpr double eps = 2.3e-16;
    static constexpr double tiny = 1e-300;
};

template <>
struct ri_const<__float128> {
    static constexpr __float128 eps = FLT128_EPSILON;
    static constexpr __float128 tiny = 1e-4900q;
};

// Symmetric tridiagonal eigensolver (QL with implicit shifts) that tracks only
// the first component of each eigenvector, which is all Golub-Welsch needs.
// d: diagonal in, eigenvalues out (ascending). e: subdiagonal (e[i] couples
// d[i], d[i+1]). z: first-component vector, initialized by the caller.
template <typename Real>
void tridiag_eigen_first_component(std::vector<Real>& d, std::vector<Real>& e,
                                   std::vector<Real>& z) {
    const int n = static_cast<int>(d.size());
    e.resize(n, Real(0));
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        while (true) {
            int m = l;
            for (; m < n - 1; ++m) {
                const Real dd = ri_fabs(d[m]) + ri_fabs(d[m + 1]);
                if (ri_fabs(e[m]) <= ri_const<Real>::tiny + ri_const<Real>::eps * dd) break;
            }
            if (m == l) break;
            if (++iter > 60) throw convergence_error("tridiag eigensolve: QL iteration stalled");
            Real g = (d[l + 1] - d[l]) / (Real(2) * e[l]);
            Real r = ri_hypot(g, Real(1));
            g = d[m] - d[l] + e[l] / (g + (g >= Real(0) ? r : -r));
            Real s = Real(1), c = Real(1), p = Real(0);
            for (int i = m - 1; i >= l; --i) {
                Real f = s * e[i];
                const Real b = c * e[i];
                r = ri_hypot(f, g);
                e[i + 1] = r;
                if (r == Real(0)) {
                    d[i + 1] -= p;
                    e[m] = Real(0);
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + Real(2) * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                const Real zt = z[i + 1];
                z[i + 1] = s * z[i] + c * zt;
                z[i] = c * z[i] - s * zt;
            }
            if (r == Real(0) && m - 1 >= l) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = Real(0);
        }
    }
    for (int i = 0; i < n - 1; ++i) {
        int k = i;
        for (int j = i + 1; j < n; ++j)
            if (d[j] < d[k]) k = j;
        if (k != i) {
            std::swap(d[i], d[k]);
            std::swap(z[i], z[k]);
        }
    }
}

// Gauss-Legendre rule on [-1, 1].
template <typename Real>
void legendre_rule(int n, std::vector<Real>& nodes, std::vector<Real>& weights) {
    if (n < 1) throw domain_error("gauss_legendre: need at least one node");
    nodes.assign(n, Real(0));
    weights.assign(n, Real(0));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi-style initial guess for the i-th largest root, then Newton.
        Real x = Real(std::cos(M_PI * (i + 0.75) / (n + 0.5)));
        Real deriv = Real(0);
        for (int iter = 0; iter < 200; ++iter) {
            Real p0 = Real(1), p1 = Real(0);
            for (int j = 0; j < n; ++j) {
                const Real p2 = p1;
                p1 = p0;
                p0 = (Real(2 * j + 1) * x * p1 - Real(j) * p2) / Real(j + 1);
            }
            deriv = Real(n) * (x * p0 - p1) / (x * x - Real(1));
            const Real dx = p0 / deriv;
            x -= dx;
            if (ri_fabs(dx) <= ri_const<Real>::eps * Real(4)) break;
        }
        const Real w = Real(2) / ((Real(1) - x * x) * deriv * deriv);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

// Gauss rule for the weight x^b on [0, 1], b > -1, via Golub-Welsch on the
// Jacobi weight (1+t)^b over [-1, 1].
template <typename Real>
void jacobi_rule01(int n, Real b, std::vector<Real>& nodes, std::vector<Real>& weights) {
    if (n < 1) throw domain_error("gauss_jacobi: need at least one node");
    if (!(b > Real(-1))) throw domain_error("gauss_jacobi: exponent must exceed -1");
    std::vector<Real> diag(n), off(n, Real(0)), z(n, Real(0));
    z[0] = Real(1);
    for (int k = 0; k < n; ++k) {
        const Real den = (Real(2 * k) + b) * (Real(2 * k) + b + Real(2));
        diag[k] = (k == 0) ? b / (b + Real(2)) : b * b / den;
    }
    for (int k = 1; k < n; ++k) {
        const Real q = Real(2 * k) + b;
        // 4k(k+a)(k+b)(k+a+b) / (q^2 (q+1)(q-1)) with a = 0
        const Real beta_k =
            Real(4 * k) * Real(k) * (Real(k) + b) * (Real(k) + b) / (q * q * (q + Real(1)) * (q - Real(1)));
        off[k - 1] = ri_sqrt(beta_k);
    }
    tridiag_eigen_first_component(diag, off, z);
    const Real mu0 = ri_pow(Real(2), b + Real(1)) / (b + Real(1)); // total weight on [-1,1]
    const Real scale = ri_pow(Real(2), -b - Real(1));
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        nodes[i] = (Real(1) + diag[i]) / Real(2);
        weights[i] = scale * mu0 * z[i] * z[i];
    }
}

} // namespace rules
} // namespace fraclab
