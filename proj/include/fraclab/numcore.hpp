#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "fraclab/errors.hpp"

namespace fraclab {

using Cplx = std::complex<double>;

/// Uniform 1-D grid on [a, b] with n_cells cells and n_cells + 1 nodes x_i = a + i h.
struct Grid1D {
    double a = 0.0;
    double b = 1.0;
    int n_cells = 1;

    Grid1D() = default;
    Grid1D(double a_, double b_, int n_cells_);

    double h() const { return (b - a) / n_cells; }
    int n_nodes() const { return n_cells + 1; }
    double node(int i) const { return a + i * h(); }
};

/// Dense row-major matrix of doubles.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols, double fill = 0.0);

    static DenseMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    DenseMatrix transposed() const;
    DenseMatrix multiply(const DenseMatrix& rhs) const;
    std::vector<double> multiply(const std::vector<double>& x) const;

    double max_abs() const;
    double frobenius_norm() const;
    bool all_finite() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// Thin singular value decomposition A = U diag(sigma) V^T.
struct SvdResult {
    std::vector<double> singular_values; // descending, nonnegative
    DenseMatrix left_vectors;            // rows x p, orthonormal columns
    DenseMatrix right_vectors;           // cols x p, orthonormal columns
    int numerical_rank = 0;
    double cond = 1.0; // sigma_1 / sigma_r at the numerical rank r
};

/// One-sided Jacobi SVD. numerical_rank counts sigma_i > rank_tol * sigma_1.
/// Sign convention: the first nonzero component of each left vector is positive.
SvdResult svd(const DenseMatrix& a, double rank_tol = 1e-12);

/// Solves a tridiagonal system with partial pivoting.
/// sub has length n-1 (below diagonal), diag length n, sup length n-1.
std::vector<double> tridiag_solve(const std::vector<double>& sub,
                                  const std::vector<double>& diag,
                                  const std::vector<double>& sup,
                                  const std::vector<double>& rhs);

/// LU factorization with partial pivoting; factor once, solve many.
class LuFactorization {
public:
    explicit LuFactorization(const DenseMatrix& a);
    std::vector<double> apply(const std::vector<double>& rhs) const;
    int size() const { return n_; }

private:
    int n_ = 0;
    DenseMatrix lu_;
    std::vector<int> perm_;
};

/// Numerical inverse Laplace transform on a fixed Talbot contour with
/// n_nodes quadrature samples. F must be analytic to the right of the contour.
double talbot_invert(const std::function<Cplx(Cplx)>& transform, double t, int n_nodes = 32);

/// Quadrature rule: nodes and matching weights.
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1].
QuadRule gauss_legendre(int n);

/// Gauss-Jacobi rule on [0, 1] for the weight x^exponent, exponent > -1:
/// integral_0^1 x^exponent f(x) dx ~= sum w_i f(x_i).
QuadRule gauss_jacobi(int n, double exponent);

/// Formats a double with 17 significant digits (round-trip exact).
std::string csv_number(double v);

/// Writes a CSV file: header row then data rows, LF line endings.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Runs fn(0..n_tasks-1), possibly concurrently. The worker count is capped by
/// the FRACLAB_THREADS environment variable (0 or unset = hardware default).
void parallel_for(int n_tasks, const std::function<void(int)>& fn);

/// Resolved worker count after applying FRACLAB_THREADS.
int worker_count();

} // namespace fraclab
