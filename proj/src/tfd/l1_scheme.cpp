#include "fraclab/tfd.hpp"

#include <cmath>
#include <string>

#include "fraclab/specfun.hpp"

namespace fraclab {

L1Weights l1_weights(double alpha, int count) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw domain_error("l1_weights: alpha must lie in (0, 1]");
    if (count < 1) throw domain_error("l1_weights: count must be positive");

    L1Weights w;
    w.alpha = alpha;
    w.b.resize(count);
    if (alpha == 1.0) {
        // Backward Euler limit: only the current level carries weight.
        w.b.assign(count, 0.0);
        w.b[0] = 1.0;
        return w;
    }
    const double rg = 1.0 / gamma_fn(2.0 - alpha);
    const double e = 1.0 - alpha;
    double prev = 0.0;
    for (int j = 0; j < count; ++j) {
        const double next = std::pow(static_cast<double>(j + 1), e);
        w.b[j] = (next - prev) * rg;
        prev = next;
    }
    return w;
}

namespace {

// Potential samples on all nodes; an interior-only array is padded with zero
// boundary values.
std::vector<double> full_potential(const TfdProblem& p) {
    const int m = p.grid.n_nodes();
    std::vector<double> q(m, 0.0);
    if (p.q.empty()) return q;
    if (static_cast<int>(p.q.size()) == m) {
        q = p.q;
    } else if (static_cast<int>(p.q.size()) == m - 2) {
        for (int i = 1; i < m - 1; ++i) q[i] = p.q[i - 1];
    } else {
        throw domain_error("solve_tfd: q must be sampled on all nodes or interior nodes");
    }
    return q;
}

} // namespace

DenseMatrix solve_tfd(const TfdProblem& p) {
    if (!(p.alpha > 0.0) || p.alpha > 1.0)
        throw domain_error("solve_tfd: alpha must lie in (0, 1]");
    if (!(p.T > 0.0)) throw domain_error("solve_tfd: T must be positive");
    if (p.n_steps < 1) throw domain_error("solve_tfd: n_steps must be positive");
    const int m = p.grid.n_nodes(); // nodes 0..n
    const int n = m - 1;
    const int K = p.n_steps;
    if (!p.v.empty() && static_cast<int>(p.v.size()) != m)
        throw domain_error("solve_tfd: v must be sampled on all nodes");

    const double h = p.grid.h();
    const double tau = p.T / K;
    const L1Weights w = l1_weights(p.alpha, K);
    const double scale = std::pow(tau, -p.alpha);
    const double sigma = scale * w.b[0];
    const std::vector<double> q = full_potential(p);

    // The system matrix is the same at every step; only the right-hand side
    // moves. Dirichlet rows are kept in the band as identity rows.
    const double w_in = 1.0 / (h * h);
    std::vector<double> sub(n), diag(m), sup(n);
    for (int i = 1; i < n; ++i) {
        sub[i - 1] = -w_in;
        diag[i] = sigma + 2.0 * w_in + q[i];
        sup[i] = -w_in;
    }
    if (p.left == BoundaryKind::dirichlet) {
        diag[0] = 1.0;
        sup[0] = 0.0;
    } else {
        diag[0] = sigma + 2.0 * w_in + q[0];
        sup[0] = -2.0 * w_in;
    }
    if (p.right == BoundaryKind::dirichlet) {
        diag[n] = 1.0;
        sub[n - 1] = 0.0;
    } else {
        diag[n] = sigma + 2.0 * w_in + q[n];
        sub[n - 1] = -2.0 * w_in;
    }

    // Time-major history table for contiguous memory sweeps; transposed on
    // return to the node-major layout of the contract.
    DenseMatrix hist(K + 1, m);
    if (!p.v.empty())
        for (int i = 0; i < m; ++i) hist(0, i) = p.v[i];

    std::vector<double> rhs(m);
    for (int k = 1; k <= K; ++k) {
        const double t = k * tau;

        // Memory term moved to the right side:
        // tau^{-alpha} [ b_{k-1} u^0 - sum_{j=1}^{k-1} (b_j - b_{j-1}) u^{k-j} ].
        const double* level0 = &hist.data()[0];
        for (int i = 0; i < m; ++i) rhs[i] = w.b[k - 1] * level0[i];
        for (int j = 1; j < k; ++j) {
            const double c = w.b[j] - w.b[j - 1];
            if (c == 0.0) continue;
            const double* level = &hist.data()[static_cast<size_t>(k - j) * m];
            for (int i = 0; i < m; ++i) rhs[i] -= c * level[i];
        }
        for (int i = 0; i < m; ++i) {
            rhs[i] *= scale;
            if (p.f) rhs[i] += p.f(p.grid.node(i), t);
        }
        if (p.left == BoundaryKind::dirichlet)
            rhs[0] = p.g ? p.g(t) : 0.0;
        else if (p.g)
            rhs[0] += (2.0 / h) * p.g(t);
        if (p.right == BoundaryKind::dirichlet)
            rhs[n] = p.h ? p.h(t) : 0.0;
        else if (p.h)
            rhs[n] += (2.0 / h) * p.h(t);

        const std::vector<double> level = tridiag_solve(sub, diag, sup, rhs);
        for (int i = 0; i < m; ++i) hist(k, i) = level[i];
    }
    return hist.transposed();
}

std::vector<double> flux_trace_left(const DenseMatrix& table, const Grid1D& grid) {
    if (table.rows() != grid.n_nodes() || table.rows() < 3)
        throw domain_error("flux_trace_left: table rows must match a grid with >= 3 nodes");
    const double h = grid.h();
    std::vector<double> flux(table.cols());
    for (int k = 0; k < table.cols(); ++k)
        flux[k] = (3.0 * table(0, k) - 4.0 * table(1, k) + table(2, k)) / (2.0 * h);
    return flux;
}

} // namespace fraclab
