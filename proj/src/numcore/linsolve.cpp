#include "fraclab/numcore.hpp"

#include <cmath>

namespace fraclab {

std::vector<double> tridiag_solve(const std::vector<double>& sub,
                                  const std::vector<double>& diag,
                                  const std::vector<double>& sup,
                                  const std::vector<double>& rhs) {
    const int n = static_cast<int>(diag.size());
    if (n < 1) throw domain_error("tridiag_solve: empty system");
    if (static_cast<int>(sub.size()) != n - 1 || static_cast<int>(sup.size()) != n - 1 ||
        static_cast<int>(rhs.size()) != n)
        throw domain_error("tridiag_solve: inconsistent band lengths");

    // Working bands; partial pivoting fills a second superdiagonal.
    std::vector<double> d(diag), u1(n, 0.0), u2(n, 0.0), x(rhs);
    for (int i = 0; i < n - 1; ++i) u1[i] = sup[i];

    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::fabs(d[i]));
    for (double v : sub) scale = std::max(scale, std::fabs(v));
    for (double v : sup) scale = std::max(scale, std::fabs(v));
    const double tiny = 1e-300 + 1e-15 * scale;

    for (int i = 0; i < n - 1; ++i) {
        double low = sub[i];
        // Row swap when the subdiagonal dominates the pivot.
        if (std::fabs(low) > std::fabs(d[i])) {
            std::swap(d[i], low);
            const double t1 = u1[i];
            u1[i] = d[i + 1];
            d[i + 1] = t1;
            u2[i] = u1[i + 1];
            u1[i + 1] = 0.0;
            std::swap(x[i], x[i + 1]);
        }
        if (std::fabs(d[i]) < tiny) throw singular_error("tridiag_solve: zero pivot", i);
        const double m = low / d[i];
        d[i + 1] -= m * u1[i];
        u1[i + 1] -= m * u2[i];
        x[i + 1] -= m * x[i];
    }
    if (std::fabs(d[n - 1]) < tiny) throw singular_error("tridiag_solve: zero pivot", n - 1);

    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        if (i + 1 < n) s -= u1[i] * x[i + 1];
        if (i + 2 < n) s -= u2[i] * x[i + 2];
        x[i] = s / d[i];
    }
    return x;
}

LuFactorization::LuFactorization(const DenseMatrix& a) : n_(a.rows()), lu_(a), perm_(a.rows()) {
    if (a.rows() != a.cols()) throw domain_error("LuFactorization: matrix must be square");
    for (int i = 0; i < n_; ++i) perm_[i] = i;
    double scale = lu_.max_abs();
    const double tiny = 1e-300 + 1e-14 * scale;
    for (int k = 0; k < n_; ++k) {
        int p = k;
        for (int i = k + 1; i < n_; ++i)
            if (std::fabs(lu_(i, k)) > std::fabs(lu_(p, k))) p = i;
        if (p != k) {
            for (int j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(p, j));
            std::swap(perm_[k], perm_[p]);
        }
        const double piv = lu_(k, k);
        if (std::fabs(piv) < tiny) throw singular_error("LuFactorization: zero pivot", k);
        for (int i = k + 1; i < n_; ++i) {
            const double m = lu_(i, k) / piv;
            lu_(i, k) = m;
            if (m == 0.0) continue;
            for (int j = k + 1; j < n_; ++j) lu_(i, j) -= m * lu_(k, j);
        }
    }
}

std::vector<double> LuFactorization::apply(const std::vector<double>& rhs) const {
    if (static_cast<int>(rhs.size()) != n_)
        throw domain_error("LuFactorization::apply: length mismatch");
    std::vector<double> x(n_);
    for (int i = 0; i < n_; ++i) x[i] = rhs[perm_[i]];
    for (int i = 1; i < n_; ++i) {
        double s = x[i];
        for (int j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
        x[i] = s;
    }
    for (int i = n_ - 1; i >= 0; --i) {
        double s = x[i];
        for (int j = i + 1; j < n_; ++j) s -= lu_(i, j) * x[j];
        x[i] = s / lu_(i, i);
    }
    return x;
}

} // namespace fraclab
