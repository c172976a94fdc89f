#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fraclab/numcore.hpp"

using namespace fraclab;

namespace {

DenseMatrix random_matrix(int rows, int cols, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = u(rng);
    return a;
}

// Cyclic two-sided Jacobi eigensolver for symmetric matrices; serves as an
// independent oracle for singular values via eig(A^T A).
std::vector<double> symmetric_eigenvalues(DenseMatrix s) {
    const int n = s.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += s(i, j) * s(i, j);
        if (off < 1e-26 * (1.0 + s.frobenius_norm())) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(s(p, q)) < 1e-300) continue;
                const double theta = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), sn = t * c;
                for (int k = 0; k < n; ++k) {
                    const double skp = s(k, p), skq = s(k, q);
                    s(k, p) = c * skp - sn * skq;
                    s(k, q) = sn * skp + c * skq;
                }
                for (int k = 0; k < n; ++k) {
                    const double spk = s(p, k), sqk = s(q, k);
                    s(p, k) = c * spk - sn * sqk;
                    s(q, k) = sn * spk + c * sqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = s(i, i);
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

void check_svd_invariants(const DenseMatrix& a, const SvdResult& r, double tol) {
    const int m = a.rows(), n = a.cols();
    const int p = (int)r.singular_values.size();
    REQUIRE(p == std::min(m, n));
    for (int i = 0; i + 1 < p; ++i) CHECK(r.singular_values[i] >= r.singular_values[i + 1]);
    // Reconstruction A = U diag(sigma) V^T.
    double recon_err = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < p; ++k)
                s += r.left_vectors(i, k) * r.singular_values[k] * r.right_vectors(j, k);
            recon_err = std::max(recon_err, std::fabs(s - a(i, j)));
        }
    CHECK(recon_err <= tol * (1.0 + a.max_abs()));
    // Orthonormal columns.
    for (int k = 0; k < p; ++k)
        for (int l = k; l < p; ++l) {
            double du = 0.0, dv = 0.0;
            for (int i = 0; i < m; ++i) du += r.left_vectors(i, k) * r.left_vectors(i, l);
            for (int i = 0; i < n; ++i) dv += r.right_vectors(i, k) * r.right_vectors(i, l);
            const double want = (k == l) ? 1.0 : 0.0;
            CHECK(std::fabs(du - want) <= tol);
            CHECK(std::fabs(dv - want) <= tol);
        }
}

} // namespace

TEST_CASE("grid basics") {
    Grid1D g(0.0, 1.0, 4);
    CHECK(g.h() == doctest::Approx(0.25));
    CHECK(g.n_nodes() == 5);
    CHECK(g.node(2) == doctest::Approx(0.5));
    CHECK_THROWS_AS(Grid1D(1.0, 0.0, 4), domain_error);
    CHECK_THROWS_AS(Grid1D(0.0, 1.0, 0), domain_error);
}

TEST_CASE("dense matrix multiply and transpose") {
    DenseMatrix a(2, 3);
    a(0, 0) = 1;
    a(0, 1) = 2;
    a(0, 2) = 3;
    a(1, 0) = 4;
    a(1, 1) = 5;
    a(1, 2) = 6;
    const DenseMatrix at = a.transposed();
    CHECK(at.rows() == 3);
    CHECK(at(2, 1) == 6);
    const DenseMatrix g = at.multiply(a); // 3x3 Gram matrix
    CHECK(g(0, 0) == doctest::Approx(17.0));
    CHECK(g(2, 2) == doctest::Approx(45.0));
    const std::vector<double> y = a.multiply(std::vector<double>{1.0, 1.0, 1.0});
    CHECK(y[0] == doctest::Approx(6.0));
    CHECK(y[1] == doctest::Approx(15.0));
}

TEST_CASE("gauss-legendre polynomial exactness") {
    const QuadRule r = gauss_legendre(8);
    for (int k = 0; k <= 15; ++k) {
        double s = 0.0;
        for (size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
        const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
        CHECK(std::fabs(s - exact) <= 1e-14);
    }
    CHECK_THROWS_AS(gauss_legendre(0), domain_error);
}

TEST_CASE("gauss-jacobi handles the x^gamma weight") {
    for (double g : {-0.5, -0.2, 0.0, 0.7, 1.0, 2.3}) {
        const QuadRule r = gauss_jacobi(12, g);
        for (int k = 0; k <= 23; ++k) {
            double s = 0.0;
            for (size_t i = 0; i < r.nodes.size(); ++i)
                s += r.weights[i] * std::pow(r.nodes[i], k);
            const double exact = 1.0 / (g + k + 1.0); // integral_0^1 x^g x^k dx
            CHECK(std::fabs(s - exact) <= 1e-13 * (1.0 + exact));
        }
    }
    CHECK_THROWS_AS(gauss_jacobi(4, -1.0), domain_error);
}

TEST_CASE("tridiagonal solve reproduces the discrete Poisson solution") {
    const int n = 63; // interior nodes
    const double h = 1.0 / (n + 1);
    std::vector<double> sub(n - 1, -1.0 / (h * h)), sup(n - 1, -1.0 / (h * h));
    std::vector<double> diag(n, 2.0 / (h * h)), rhs(n, 1.0);
    const std::vector<double> u = tridiag_solve(sub, diag, sup, rhs);
    for (int i = 0; i < n; ++i) {
        const double x = (i + 1) * h;
        CHECK(u[i] == doctest::Approx(0.5 * x * (1.0 - x)).epsilon(1e-12));
    }
}

TEST_CASE("tridiagonal solve pivots through a zero diagonal") {
    // [[0 1],[1 0]] x = b swaps the entries; no pivoting would divide by zero.
    const std::vector<double> x = tridiag_solve({1.0}, {0.0, 0.0}, {1.0}, {3.0, 7.0});
    CHECK(x[0] == doctest::Approx(7.0));
    CHECK(x[1] == doctest::Approx(3.0));
    CHECK_THROWS_AS(tridiag_solve({0.0}, {0.0, 0.0}, {0.0}, {1.0, 1.0}), singular_error);
}

TEST_CASE("LU factorization solves and is reusable") {
    std::mt19937 rng(42);
    DenseMatrix a = random_matrix(8, 8, rng);
    for (int i = 0; i < 8; ++i) a(i, i) += 4.0; // keep it comfortably regular
    const LuFactorization lu(a);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<double> xref(8);
        for (int i = 0; i < 8; ++i) xref[i] = std::sin(trial + i + 1.0);
        const std::vector<double> b = a.multiply(xref);
        const std::vector<double> x = lu.apply(b);
        for (int i = 0; i < 8; ++i) CHECK(x[i] == doctest::Approx(xref[i]).epsilon(1e-11));
    }
    // Permutation matrix forces row exchanges.
    DenseMatrix p(2, 2);
    p(0, 1) = 1.0;
    p(1, 0) = 1.0;
    const std::vector<double> y = LuFactorization(p).apply({2.0, 5.0});
    CHECK(y[0] == doctest::Approx(5.0));
    CHECK(y[1] == doctest::Approx(2.0));
    CHECK_THROWS_AS(LuFactorization(DenseMatrix(3, 3)), singular_error);
}

TEST_CASE("svd on a known diagonal-plus-rotation case") {
    DenseMatrix a(3, 2);
    a(0, 0) = 3.0;
    a(1, 1) = 2.0;
    SvdResult r = svd(a);
    CHECK(r.singular_values[0] == doctest::Approx(3.0));
    CHECK(r.singular_values[1] == doctest::Approx(2.0));
    CHECK(r.numerical_rank == 2);
    CHECK(r.cond == doctest::Approx(1.5));
    check_svd_invariants(a, r, 1e-12);
}

TEST_CASE("svd rank and conditioning edge cases") {
    // Rank-one outer product.
    DenseMatrix a(4, 3);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = (i + 1.0) * (j + 1.0);
    SvdResult r = svd(a);
    CHECK(r.numerical_rank == 1);
    check_svd_invariants(a, r, 1e-12);

    // Zero matrix: rank 0, cond reported as 1.
    SvdResult z = svd(DenseMatrix(3, 3));
    CHECK(z.numerical_rank == 0);
    CHECK(z.cond == doctest::Approx(1.0));
    CHECK(z.singular_values[0] == 0.0);
    check_svd_invariants(DenseMatrix(3, 3), z, 1e-12);

    DenseMatrix nan_mat(2, 2);
    nan_mat(0, 0) = std::nan("");
    CHECK_THROWS_AS(svd(nan_mat), domain_error);
}

TEST_CASE("svd invariants on random rectangular matrices") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 12; ++trial) {
        std::uniform_int_distribution<int> dim(1, 40);
        const int m = dim(rng), n = dim(rng);
        DenseMatrix a = random_matrix(m, n, rng);
        SvdResult r = svd(a);
        check_svd_invariants(a, r, 1e-10);
        // Cross-check singular values against eig(A^T A).
        const DenseMatrix gram =
            (m >= n) ? a.transposed().multiply(a) : a.multiply(a.transposed());
        const std::vector<double> ev = symmetric_eigenvalues(gram);
        for (size_t k = 0; k < r.singular_values.size(); ++k) {
            const double want = std::sqrt(std::max(0.0, ev[k]));
            CHECK(std::fabs(r.singular_values[k] - want) <= 1e-8 * (1.0 + want));
        }
    }
}

TEST_CASE("svd is deterministic") {
    std::mt19937 rng(11);
    DenseMatrix a = random_matrix(17, 9, rng);
    SvdResult r1 = svd(a), r2 = svd(a);
    CHECK(r1.singular_values == r2.singular_values);
    CHECK(r1.left_vectors.data() == r2.left_vectors.data());
    CHECK(r1.right_vectors.data() == r2.right_vectors.data());
}

TEST_CASE("talbot inversion of elementary transforms") {
    // F(s) = 1/(s+1) -> e^{-t}; F(s) = 1/s^2 -> t; F(s) = 1/s -> 1.
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        const double e1 = talbot_invert([](Cplx s) { return 1.0 / (s + 1.0); }, t);
        CHECK(std::fabs(e1 - std::exp(-t)) <= 1e-8 * std::exp(-t));
        const double ramp = talbot_invert([](Cplx s) { return 1.0 / (s * s); }, t);
        CHECK(std::fabs(ramp - t) <= 1e-8 * t);
        const double one = talbot_invert([](Cplx s) { return 1.0 / s; }, t);
        CHECK(std::fabs(one - 1.0) <= 1e-8);
    }
    CHECK_THROWS_AS(talbot_invert([](Cplx) { return Cplx(0.0, 0.0); }, 0.0), domain_error);
}

TEST_CASE("csv output is stable and LF-terminated") {
    CHECK(csv_number(0.5) == "0.5");
    CHECK(csv_number(1.0 / 3.0) == "0.33333333333333331");
    const std::string path = "numcore_test_out.csv";
    write_csv(path, {"a", "b"}, {{"1", "2"}, {csv_number(0.25), "x"}});
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "a,b\n1,2\n0.25,x\n");
    std::remove(path.c_str());
}

TEST_CASE("parallel_for covers every index exactly once") {
    const int n = 1000;
    std::vector<int> hits(n, 0);
    parallel_for(n, [&](int i) { hits[i] += 1; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK(worker_count() >= 1);
}
