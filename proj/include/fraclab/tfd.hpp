#pragma once

#include <functional>
#include <vector>

#include "fraclab/numcore.hpp"

namespace fraclab {

/// L1 discretization weights for the Caputo derivative of order alpha:
/// b_j = ((j+1)^{1-alpha} - j^{1-alpha}) / Gamma(2-alpha), strictly positive
/// and strictly decreasing. alpha = 1 degenerates to backward Euler and is
/// special-cased to b = (1, 0, 0, ...).
struct L1Weights {
    double alpha = 0.5;
    std::vector<double> b;
};

L1Weights l1_weights(double alpha, int count);

/// Boundary condition kind at one endpoint. A Dirichlet sampler prescribes
/// the solution value; a Neumann sampler prescribes the outward normal
/// derivative (-u_x at the left endpoint, +u_x at the right), discretized by
/// second-order ghost-node reflection.
enum class BoundaryKind { dirichlet, neumann };

/// Initial boundary value problem for time-fractional diffusion,
///   d_t^alpha u - u_xx + q u = f   on grid x in [a, b], t in (0, T],
/// with u(., 0) = v and boundary samplers g (left) and h (right). Null
/// samplers and empty arrays mean identically zero. The potential q may be
/// sampled on all nodes or on interior nodes only; in the interior-only form
/// the boundary values count as zero, which matters only for Neumann rows.
struct TfdProblem {
    double alpha = 0.5; // Caputo order in (0, 1]
    Grid1D grid{0.0, 1.0, 100};
    double T = 1.0;
    int n_steps = 100;
    std::vector<double> q;
    std::function<double(double, double)> f; // source sampler f(x, t)
    std::vector<double> v;                   // initial values on all nodes
    std::function<double(double)> g;         // left boundary sampler
    std::function<double(double)> h;         // right boundary sampler
    BoundaryKind left = BoundaryKind::dirichlet;
    BoundaryKind right = BoundaryKind::dirichlet;
};

/// L1 in time, central differences in space. Returns the space-time table
/// with entry (i, k) = u(x_i, t_k), i = 0..n_cells, k = 0..n_steps. Each step
/// solves one tridiagonal system; the right-hand side carries the full memory
/// sum over earlier levels.
DenseMatrix solve_tfd(const TfdProblem& p);

/// Flux -u_x at the left endpoint for every time level of a solve_tfd table,
/// by the one-sided second-order difference (3u_0 - 4u_1 + u_2) / (2h).
std::vector<double> flux_trace_left(const DenseMatrix& table, const Grid1D& grid);

/// Backward-diffusion data map over interior nodes: column j is u(., T) for
/// initial data equal to the hat function at interior node j, zero source and
/// boundary data. Square, (n_cells - 1) x (n_cells - 1).
DenseMatrix map_backward(double alpha, const Grid1D& grid, double T, int n_steps);

/// Sideways map: column j is the flux trace -u_x(left, t_k), k = 1..n_steps,
/// for Dirichlet data at the right endpoint equal to the hat in time at time
/// node j, zero data otherwise. n_steps x n_steps and lower triangular:
/// nothing arrives before the kick.
DenseMatrix map_sideways(double alpha, const Grid1D& grid, double T, int n_steps);

/// Source-to-final-time map for space-only sources: column j is u(., T) at
/// interior nodes for f equal to the hat at interior node j, zero initial and
/// boundary data. (n_cells - 1) x (n_cells - 1).
DenseMatrix map_source_space(double alpha, const Grid1D& grid, double T, int n_steps);

/// Observation operator for map_source_time.
enum class SourceTimeData { final_time, flux_at_0 };

/// Map from a time profile p to data for separated sources f(x,t) = qx(x) p(t):
/// column j takes p equal to the hat in time at time node j. Data is either
/// the final-time interior vector ((n_cells - 1) x n_steps) or the flux trace
/// at the left endpoint (n_steps x n_steps). qx may be sampled on all nodes
/// or interior nodes only (boundary samples are never read).
DenseMatrix map_source_time(double alpha, const Grid1D& grid, double T, int n_steps,
                            const std::vector<double>& qx, SourceTimeData data_kind);

/// Convolution kernel of the sideways problem at depth L > 0:
/// R_alpha(s) = s^{-alpha} W_{-alpha/2, 1-alpha}(-L s^{-alpha/2}), s > 0.
/// At alpha = 1 this reduces to the lateral heat kernel
/// (L / (2 sqrt(pi))) s^{-3/2} e^{-L^2/(4s)}, which is evaluated directly.
double sideways_kernel(double alpha, double L, double s);

} // namespace fraclab
