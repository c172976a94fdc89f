#include "fraclab/inverse.hpp"

#include <cmath>
#include <string>

#include "fraclab/tfd.hpp"

namespace fraclab {

namespace {

/// Caputo derivative of order alpha at the final time of a node-time table,
/// by the L1 memory formula applied to the stored history.
std::vector<double> caputo_at_final(double alpha, double T, const DenseMatrix& table) {
    const int k_steps = table.cols() - 1;
    const double tau = T / k_steps;
    const std::vector<double> b = l1_weights(alpha, k_steps).b;
    const double scale = std::pow(tau, -alpha);
    std::vector<double> out(table.rows());
    for (int i = 0; i < table.rows(); ++i) {
        double acc = b[0] * table(i, k_steps) - b[k_steps - 1] * table(i, 0);
        for (int j = 1; j < k_steps; ++j) acc += (b[j] - b[j - 1]) * table(i, k_steps - j);
        out[i] = scale * acc;
    }
    return out;
}

/// Second derivative on nodes: central inside, one-sided second order at the ends.
std::vector<double> second_derivative(const std::vector<double>& g, double h) {
    const int n = static_cast<int>(g.size()) - 1;
    const double h2 = h * h;
    std::vector<double> out(g.size());
    out[0] = (2.0 * g[0] - 5.0 * g[1] + 4.0 * g[2] - g[3]) / h2;
    for (int i = 1; i < n; ++i) out[i] = (g[i - 1] - 2.0 * g[i] + g[i + 1]) / h2;
    out[n] = (2.0 * g[n] - 5.0 * g[n - 1] + 4.0 * g[n - 2] - g[n - 3]) / h2;
    return out;
}

double l2_norm(const std::vector<double>& x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return std::sqrt(acc);
}

} // namespace

PotentialRecovery potential_fixed_point(double alpha, double T, const Grid1D& grid, int n_steps,
                                        const std::vector<double>& g, const std::vector<double>& v,
                                        const std::vector<double>& q0, int iterations,
                                        double g_min) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw domain_error("potential_fixed_point: alpha must lie in (0, 1]");
    if (!(T > 0.0)) throw domain_error("potential_fixed_point: T must be positive");
    if (n_steps < 1) throw domain_error("potential_fixed_point: need at least one time step");
    if (grid.n_cells < 3)
        throw domain_error("potential_fixed_point: need at least 3 cells for the boundary stencils");
    if (iterations < 0) throw domain_error("potential_fixed_point: iterations must be >= 0");
    if (!(g_min > 0.0)) throw domain_error("potential_fixed_point: g_min must be positive");
    const size_t n_nodes = static_cast<size_t>(grid.n_nodes());
    if (g.size() != n_nodes)
        throw domain_error("potential_fixed_point: data g must be sampled on all nodes");
    if (!v.empty() && v.size() != n_nodes)
        throw domain_error("potential_fixed_point: initial data size mismatch");
    if (!q0.empty() && q0.size() != n_nodes)
        throw domain_error("potential_fixed_point: initial guess size mismatch");
    for (size_t i = 0; i < n_nodes; ++i) {
        if (std::abs(g[i]) < g_min)
            throw domain_error("potential_fixed_point: |g| < g_min at node " + std::to_string(i));
    }

    PotentialRecovery out;
    std::vector<double> q = q0.empty() ? std::vector<double>(n_nodes, 0.0) : q0;
    out.iterates.push_back(q);

    const std::vector<double> gxx = second_derivative(g, grid.h());

    TfdProblem p;
    p.alpha = alpha;
    p.grid = grid;
    p.T = T;
    p.n_steps = n_steps;
    p.v = v;
    p.left = BoundaryKind::neumann;
    p.right = BoundaryKind::neumann;

    for (int pass = 0; pass < iterations; ++pass) {
        p.q = q;
        const DenseMatrix table = solve_tfd(p);
        const std::vector<double> memory = caputo_at_final(alpha, T, table);
        std::vector<double> next(n_nodes);
        std::vector<double> change(n_nodes);
        for (size_t i = 0; i < n_nodes; ++i) {
            next[i] = (gxx[i] - memory[i]) / g[i];
            change[i] = next[i] - q[i];
        }
        const double scale = l2_norm(next);
        out.step_changes.push_back(l2_norm(change) / (scale > 0.0 ? scale : 1.0));
        q = next;
        out.iterates.push_back(q);
    }
    return out;
}

} // namespace fraclab
