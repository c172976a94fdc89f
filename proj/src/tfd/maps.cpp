#include "fraclab/tfd.hpp"

#include <cmath>

namespace fraclab {

namespace {

TfdProblem base_problem(double alpha, const Grid1D& grid, double T, int n_steps) {
    TfdProblem p;
    p.alpha = alpha;
    p.grid = grid;
    p.T = T;
    p.n_steps = n_steps;
    return p;
}

// Hat profile in time centered at time node j >= 1: sampled at the grid
// times it is the Kronecker delta, and zero at t = 0.
std::function<double(double)> time_hat(int j, double tau) {
    return [j, tau](double t) {
        const double r = 1.0 - std::fabs(t / tau - j);
        return r > 0.0 ? r : 0.0;
    };
}

} // namespace

DenseMatrix map_backward(double alpha, const Grid1D& grid, double T, int n_steps) {
    const int n_int = grid.n_nodes() - 2;
    if (n_int < 1) throw domain_error("map_backward: grid has no interior nodes");
    DenseMatrix map(n_int, n_int);
    parallel_for(n_int, [&](int j) {
        TfdProblem p = base_problem(alpha, grid, T, n_steps);
        p.v.assign(grid.n_nodes(), 0.0);
        p.v[j + 1] = 1.0;
        const DenseMatrix u = solve_tfd(p);
        for (int i = 0; i < n_int; ++i) map(i, j) = u(i + 1, n_steps);
    });
    return map;
}

DenseMatrix map_sideways(double alpha, const Grid1D& grid, double T, int n_steps) {
    if (n_steps < 1) throw domain_error("map_sideways: n_steps must be positive");
    const double tau = T / n_steps;
    DenseMatrix map(n_steps, n_steps);
    parallel_for(n_steps, [&](int j) {
        TfdProblem p = base_problem(alpha, grid, T, n_steps);
        p.h = time_hat(j + 1, tau);
        const DenseMatrix u = solve_tfd(p);
        const std::vector<double> flux = flux_trace_left(u, grid);
        for (int k = 0; k < n_steps; ++k) map(k, j) = flux[k + 1];
    });
    return map;
}

DenseMatrix map_source_space(double alpha, const Grid1D& grid, double T, int n_steps) {
    const int n_int = grid.n_nodes() - 2;
    if (n_int < 1) throw domain_error("map_source_space: grid has no interior nodes");
    DenseMatrix map(n_int, n_int);
    parallel_for(n_int, [&](int j) {
        TfdProblem p = base_problem(alpha, grid, T, n_steps);
        const double xj = grid.node(j + 1);
        const double h = grid.h();
        p.f = [xj, h](double x, double) {
            const double r = 1.0 - std::fabs(x - xj) / h;
            return r > 0.0 ? r : 0.0;
        };
        const DenseMatrix u = solve_tfd(p);
        for (int i = 0; i < n_int; ++i) map(i, j) = u(i + 1, n_steps);
    });
    return map;
}

DenseMatrix map_source_time(double alpha, const Grid1D& grid, double T, int n_steps,
                            const std::vector<double>& qx, SourceTimeData data_kind) {
    const int m = grid.n_nodes();
    const int n_int = m - 2;
    if (n_int < 1) throw domain_error("map_source_time: grid has no interior nodes");
    std::vector<double> profile(m, 0.0);
    if (static_cast<int>(qx.size()) == m) {
        profile = qx;
    } else if (static_cast<int>(qx.size()) == n_int) {
        for (int i = 1; i < m - 1; ++i) profile[i] = qx[i - 1];
    } else {
        throw domain_error("map_source_time: qx must be sampled on all nodes or interior nodes");
    }

    const double tau = T / n_steps;
    const double h = grid.h();
    const int rows = data_kind == SourceTimeData::final_time ? n_int : n_steps;
    DenseMatrix map(rows, n_steps);
    parallel_for(n_steps, [&](int j) {
        TfdProblem p = base_problem(alpha, grid, T, n_steps);
        const std::function<double(double)> hat = time_hat(j + 1, tau);
        p.f = [&profile, &grid, h, hat](double x, double t) {
            const int i = static_cast<int>(std::lround((x - grid.a) / h));
            return profile[i] * hat(t);
        };
        const DenseMatrix u = solve_tfd(p);
        if (data_kind == SourceTimeData::final_time) {
            for (int i = 0; i < n_int; ++i) map(i, j) = u(i + 1, n_steps);
        } else {
            const std::vector<double> flux = flux_trace_left(u, grid);
            for (int k = 0; k < n_steps; ++k) map(k, j) = flux[k + 1];
        }
    });
    return map;
}

} // namespace fraclab
