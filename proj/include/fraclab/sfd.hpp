#pragma once

#include <functional>
#include <vector>

#include "fraclab/numcore.hpp"

namespace fraclab {

/// Initial boundary value problem for space-fractional diffusion,
///   u_t - D_C^beta u + q u = f   on x in (0, 1), t in (0, T],
/// with the left Caputo derivative of order beta in (1, 2), initial samples v,
/// and Dirichlet samplers g at x = 0 and h at x = 1. Null samplers and an
/// empty v mean identically zero.
struct SfdProblem {
    double beta = 1.5; // spatial order, strictly inside (1, 2)
    Grid1D grid{0.0, 1.0, 100};
    double T = 1.0;
    int n_steps = 100;
    std::function<double(double)> q;         // potential sampler q(x)
    std::function<double(double, double)> f; // source sampler f(x, t)
    std::vector<double> v;                   // initial values on all nodes
    std::function<double(double)> g;         // boundary sampler at x = 0
    std::function<double(double)> h;         // boundary sampler at x = 1
};

/// Assembled Petrov-Galerkin system on the interior hat basis phi_1..phi_{n-1}.
/// The test functions are tilde phi_i = phi_i - gamma_i (1 - x), with gamma_i
/// fixed by the orthogonality (x^{1-beta}, tilde phi_i) = 0, which assembly
/// re-verifies by quadrature. stiffness holds the full dense bilinear form
/// -(D_RL^{beta/2} phi_j on the left, D_RL^{beta/2} tilde phi_i on the right)
/// plus the potential term (q phi_j, tilde phi_i); mass holds the symmetric
/// P1 Gram (phi_j, phi_i). The rank-one test-space correction of the mass is
/// reconstructed from gamma where needed, keeping the stored mass positive
/// definite.
struct FemSystem {
    double beta = 1.5;
    Grid1D grid{0.0, 1.0, 100};
    DenseMatrix stiffness; // (n-1) x (n-1), row i = test index, col j = trial index
    DenseMatrix mass;      // (n-1) x (n-1), symmetric tridiagonal Gram
    std::vector<double> gamma;
    double gamma_discrepancy = 0.0; // max |gamma_i - closed-form gamma_i|
};

/// Assembles stiffness, mass and gamma for order beta in (1, 2) on a grid over
/// [0, 1]. The fractional block uses the exact piecewise-power form of the
/// Riemann-Liouville half-order derivatives of hats, so no singular quadrature
/// is involved; the potential term uses 4-point Gauss-Legendre per cell.
/// Throws tolerance_error if the assembled test space fails its orthogonality
/// check.
FemSystem fem_assemble(double beta, const Grid1D& grid, const std::function<double(double)>& q);

/// Solves the steady problem -D_C^beta u + q u = f with zero Dirichlet data.
/// Returns nodal values on all grid nodes (zeros at both ends).
std::vector<double> steady_solve(const FemSystem& sys, const std::function<double(double)>& f);

/// Backward Euler in time with the FEM spatial operator. Dirichlet data enters
/// through the affine lifting s^k = g(t_k) + (h(t_k) - g(t_k)) x, which the
/// order-beta Caputo derivative annihilates. The step matrix is factored once
/// and reused. Returns the space-time table with entry (i, k) = u(x_i, t_k).
DenseMatrix evolve_sfd(const SfdProblem& p);

/// Backward-diffusion data map over interior nodes: column j is u(., T) for
/// initial data equal to the hat at interior node j, zero source and boundary
/// data. T = 0 returns the identity. (n_cells - 1) x (n_cells - 1).
DenseMatrix map_backward_space(double beta, const Grid1D& grid, double T, int n_steps);

/// Location of the Dirichlet data trace in the sideways problem; the flux is
/// read off at the opposite endpoint.
enum class CauchySite { cauchy_at_0, cauchy_at_1 };

/// Sideways map: column j is the flux trace at one endpoint, k = 1..n_steps,
/// for Dirichlet data at the other endpoint equal to the hat in time at time
/// node j. cauchy_at_0 reads -u_x at x = 0 and drives x = 1; cauchy_at_1
/// reads +u_x at x = 1 and drives x = 0. Fluxes use one-sided second-order
/// differences of the nodal solution. n_steps x n_steps, lower triangular.
DenseMatrix map_sideways_space(double beta, const Grid1D& grid, double T, int n_steps,
                               CauchySite site);

} // namespace fraclab
