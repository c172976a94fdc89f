#include "fraclab/numcore.hpp"

#include <cmath>
#include <numeric>

namespace fraclab {

namespace {

// Makes the first nonzero component of column k of u positive, flipping the
// matching column of v to keep the product unchanged.
void fix_sign(DenseMatrix& u, DenseMatrix& v, int k) {
    double lead = 0.0;
    for (int i = 0; i < u.rows(); ++i) {
        if (u(i, k) != 0.0) {
            lead = u(i, k);
            break;
        }
    }
    if (lead < 0.0) {
        for (int i = 0; i < u.rows(); ++i) u(i, k) = -u(i, k);
        for (int i = 0; i < v.rows(); ++i) v(i, k) = -v(i, k);
    }
}

// One-sided Jacobi for rows >= cols.
SvdResult svd_tall(const DenseMatrix& a, double rank_tol) {
    const int m = a.rows(), n = a.cols();
    DenseMatrix b(a);
    DenseMatrix v = DenseMatrix::identity(n);

    const double norm_f = a.frobenius_norm();
    const double off_floor = 1e-14 * norm_f;

    bool rotated = true;
    int sweeps = 0;
    while (rotated) {
        if (++sweeps > 60) throw convergence_error("svd: Jacobi sweeps exceeded the iteration cap");
        rotated = false;
        for (int i = 0; i < n - 1; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double aii = 0.0, ajj = 0.0, aij = 0.0;
                for (int r = 0; r < m; ++r) {
                    const double bi = b(r, i), bj = b(r, j);
                    aii += bi * bi;
                    ajj += bj * bj;
                    aij += bi * bj;
                }
                // Skip pairs that are already numerically orthogonal.
                if (std::fabs(aij) <= off_floor * off_floor ||
                    std::fabs(aij) <= 1e-15 * std::sqrt(aii * ajj))
                    continue;
                rotated = true;
                const double zeta = (ajj - aii) / (2.0 * aij);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (int r = 0; r < m; ++r) {
                    const double bi = b(r, i), bj = b(r, j);
                    b(r, i) = c * bi - s * bj;
                    b(r, j) = s * bi + c * bj;
                }
                for (int r = 0; r < n; ++r) {
                    const double vi = v(r, i), vj = v(r, j);
                    v(r, i) = c * vi - s * vj;
                    v(r, j) = s * vi + c * vj;
                }
            }
        }
    }

    std::vector<double> sigma(n);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int r = 0; r < m; ++r) s += b(r, j) * b(r, j);
        sigma[j] = std::sqrt(s);
    }

    // Order columns by descending singular value (stable on ties).
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int p, int q) { return sigma[p] > sigma[q]; });

    SvdResult out;
    out.singular_values.resize(n);
    out.left_vectors = DenseMatrix(m, n, 0.0);
    out.right_vectors = DenseMatrix(n, n, 0.0);
    for (int k = 0; k < n; ++k) {
        const int src = order[k];
        out.singular_values[k] = sigma[src];
        if (sigma[src] > 0.0) {
            for (int r = 0; r < m; ++r) out.left_vectors(r, k) = b(r, src) / sigma[src];
        }
        for (int r = 0; r < n; ++r) out.right_vectors(r, k) = v(r, src);
    }

    // Complete the left basis for zero singular values deterministically.
    for (int k = 0; k < n; ++k) {
        if (out.singular_values[k] > 0.0) continue;
        for (int cand = 0; cand < m; ++cand) {
            std::vector<double> w(m, 0.0);
            w[cand] = 1.0;
            // Columns not yet filled are all zero, so projecting against every
            // other column removes exactly the already-constructed directions.
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                double dot = 0.0;
                for (int r = 0; r < m; ++r) dot += w[r] * out.left_vectors(r, j);
                for (int r = 0; r < m; ++r) w[r] -= dot * out.left_vectors(r, j);
            }
            double nrm = 0.0;
            for (double x : w) nrm += x * x;
            nrm = std::sqrt(nrm);
            if (nrm > 0.5) {
                for (int r = 0; r < m; ++r) out.left_vectors(r, k) = w[r] / nrm;
                break;
            }
        }
    }

    for (int k = 0; k < n; ++k) fix_sign(out.left_vectors, out.right_vectors, k);

    const double s1 = out.singular_values.empty() ? 0.0 : out.singular_values[0];
    int rank = 0;
    for (double s : out.singular_values)
        if (s > rank_tol * s1 && s > 0.0) ++rank;
    out.numerical_rank = rank;
    out.cond = (rank > 0) ? s1 / out.singular_values[rank - 1] : 1.0;
    return out;
}

} // namespace

SvdResult svd(const DenseMatrix& a, double rank_tol) {
    if (!a.all_finite()) throw domain_error("svd: matrix has nonfinite entries");
    if (a.rows() >= a.cols()) return svd_tall(a, rank_tol);
    SvdResult t = svd_tall(a.transposed(), rank_tol);
    SvdResult out;
    out.singular_values = std::move(t.singular_values);
    out.left_vectors = std::move(t.right_vectors);
    out.right_vectors = std::move(t.left_vectors);
    out.numerical_rank = t.numerical_rank;
    out.cond = t.cond;
    for (int k = 0; k < out.left_vectors.cols(); ++k)
        fix_sign(out.left_vectors, out.right_vectors, k);
    return out;
}

} // namespace fraclab
