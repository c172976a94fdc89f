#include "fraclab/sfd.hpp"

#include <cmath>
#include <memory>

#include "fraclab/errors.hpp"
#include "src/sfd/petrov_detail.hpp"

namespace fraclab {

namespace {

// Time-stepping core: everything that does not depend on the particular data
// (initial values, boundary traces, source) is assembled and factored once,
// so forward-map columns can share one immutable factorization.
struct Stepper {
    FemSystem sys;
    DenseMatrix petrov;
    std::unique_ptr<LuFactorization> lu;
    double tau = 0.0;
    int n_steps = 0;
    std::vector<double> one_ip; // (1, tilde phi_i) = h - gamma_i / 2
    std::vector<double> x_ip;   // (x, tilde phi_i) = h x_i - gamma_i / 6
    std::vector<double> q_one;  // (q, tilde phi_i)
    std::vector<double> q_x;    // (q x, tilde phi_i)

    Stepper(double beta, const Grid1D& grid, double T, int steps,
            const std::function<double(double)>& q)
        : sys(fem_assemble(beta, grid, q)), petrov(sfd_detail::petrov_mass(sys)),
          tau(T / steps), n_steps(steps) {
        if (!(T > 0.0)) {
            throw domain_error("evolve_sfd: T must be positive");
        }
        if (steps < 1) {
            throw domain_error("evolve_sfd: n_steps must be at least 1");
        }
        const int m = petrov.rows();
        DenseMatrix step_matrix = sys.stiffness;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                step_matrix(i, j) += petrov(i, j) / tau;
            }
        }
        lu = std::make_unique<LuFactorization>(step_matrix);
        const double h = grid.h();
        one_ip.resize(m);
        x_ip.resize(m);
        for (int i = 0; i < m; ++i) {
            one_ip[i] = h - 0.5 * sys.gamma[i];
            x_ip[i] = h * (i + 1) * h - sys.gamma[i] / 6.0;
        }
        if (q) {
            q_one = sfd_detail::petrov_load(sys, q);
            q_x = sfd_detail::petrov_load(sys, [&q](double x) { return q(x) * x; });
        }
    }

    // Runs the backward Euler recursion for one data set. The solution is
    // split as u = utilde + s^k with the affine lifting s^k carrying the
    // Dirichlet data; the order-beta Caputo derivative of an affine function
    // vanishes, so the lifting enters only the mass and potential terms.
    DenseMatrix run(const std::vector<double>& v, const std::function<double(double)>& g,
                    const std::function<double(double)>& h,
                    const std::function<double(double, double)>& f) const {
        const Grid1D& grid = sys.grid;
        const int n = grid.n_cells;
        const double hx = grid.h();
        DenseMatrix table(n + 1, n_steps + 1);
        auto left = [&g](double t) { return g ? g(t) : 0.0; };
        auto right = [&h](double t) { return h ? h(t) : 0.0; };
        std::vector<double> coeff(n - 1, 0.0);
        double base = left(0.0);
        double slope = right(0.0) - base;
        for (int i = 0; i <= n; ++i) {
            const double vi = v.empty() ? 0.0 : v[i];
            table(i, 0) = vi;
            if (i >= 1 && i <= n - 1) {
                coeff[i - 1] = vi - (base + slope * i * hx);
            }
        }
        std::vector<double> rhs(n - 1);
        for (int k = 1; k <= n_steps; ++k) {
            const double t = k * tau;
            const double prev_base = base;
            const double prev_slope = slope;
            base = left(t);
            const double right_value = right(t);
            slope = right_value - base;
            const std::vector<double> mc = petrov.multiply(coeff);
            const double d_base = (prev_base - base) / tau;
            const double d_slope = (prev_slope - slope) / tau;
            for (int i = 0; i < n - 1; ++i) {
                rhs[i] = mc[i] / tau + d_base * one_ip[i] + d_slope * x_ip[i];
            }
            if (!q_one.empty()) {
                for (int i = 0; i < n - 1; ++i) {
                    rhs[i] -= base * q_one[i] + slope * q_x[i];
                }
            }
            if (f) {
                const std::vector<double> load =
                    sfd_detail::petrov_load(sys, [&f, t](double x) { return f(x, t); });
                for (int i = 0; i < n - 1; ++i) {
                    rhs[i] += load[i];
                }
            }
            coeff = lu->apply(rhs);
            table(0, k) = base;
            table(n, k) = right_value;
            for (int i = 1; i <= n - 1; ++i) {
                table(i, k) = coeff[i - 1] + base + slope * i * hx;
            }
        }
        return table;
    }
};

// Hat in time at time node j (t = j tau), vanishing at neighboring nodes.
std::function<double(double)> time_hat(int j, double tau) {
    return [j, tau](double t) { return std::max(0.0, 1.0 - std::abs(t / tau - j)); };
}

} // namespace

DenseMatrix evolve_sfd(const SfdProblem& p) {
    if (!p.v.empty() && static_cast<int>(p.v.size()) != p.grid.n_nodes()) {
        throw domain_error("evolve_sfd: v must be empty or sampled on all nodes");
    }
    const Stepper stepper(p.beta, p.grid, p.T, p.n_steps, p.q);
    return stepper.run(p.v, p.g, p.h, p.f);
}

DenseMatrix map_backward_space(double beta, const Grid1D& grid, double T, int n_steps) {
    if (T < 0.0) {
        throw domain_error("map_backward_space: T must be nonnegative");
    }
    if (T == 0.0) {
        // Nothing evolves; the map restricted to interior nodes is the identity.
        fem_assemble(beta, grid, nullptr); // still validates beta and the grid
        return DenseMatrix::identity(grid.n_cells - 1);
    }
    const Stepper stepper(beta, grid, T, n_steps, nullptr);
    const int m = grid.n_cells - 1;
    DenseMatrix map(m, m);
    parallel_for(m, [&](int j) {
        std::vector<double> v(grid.n_nodes(), 0.0);
        v[j + 1] = 1.0;
        const DenseMatrix table = stepper.run(v, nullptr, nullptr, nullptr);
        for (int i = 0; i < m; ++i) {
            map(i, j) = table(i + 1, n_steps);
        }
    });
    return map;
}

DenseMatrix map_sideways_space(double beta, const Grid1D& grid, double T, int n_steps,
                               CauchySite site) {
    const Stepper stepper(beta, grid, T, n_steps, nullptr);
    const int n = grid.n_cells;
    const double hx = grid.h();
    const double tau = T / n_steps;
    DenseMatrix map(n_steps, n_steps);
    parallel_for(n_steps, [&](int j) {
        const auto hat = time_hat(j + 1, tau);
        const bool drive_right = site == CauchySite::cauchy_at_0;
        const DenseMatrix table = stepper.run({}, drive_right ? nullptr : hat,
                                              drive_right ? hat : nullptr, nullptr);
        for (int k = 1; k <= n_steps; ++k) {
            const double flux =
                drive_right
                    ? (3.0 * table(0, k) - 4.0 * table(1, k) + table(2, k)) / (2.0 * hx)
                    : (3.0 * table(n, k) - 4.0 * table(n - 1, k) + table(n - 2, k)) / (2.0 * hx);
            map(k - 1, j) = flux;
        }
    });
    return map;
}

} // namespace fraclab
