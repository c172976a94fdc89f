#include "fraclab/numcore.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace fraclab {

Grid1D::Grid1D(double a_, double b_, int n_cells_) : a(a_), b(b_), n_cells(n_cells_) {
    if (!(b > a)) throw domain_error("Grid1D: right endpoint must exceed left endpoint");
    if (n_cells < 1) throw domain_error("Grid1D: need at least one cell");
}

DenseMatrix::DenseMatrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {
    if (rows < 1 || cols < 1) throw domain_error("DenseMatrix: dimensions must be positive");
}

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix m(n, n, 0.0);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(cols_, rows_, 0.0);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw domain_error("DenseMatrix::multiply: shape mismatch");
    DenseMatrix out(rows_, rhs.cols_, 0.0);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
        }
    }
    return out;
}

std::vector<double> DenseMatrix::multiply(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != cols_)
        throw domain_error("DenseMatrix::multiply: vector length mismatch");
    std::vector<double> y(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
}

double DenseMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

bool DenseMatrix::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary); // binary keeps LF endings everywhere
    if (!out) throw io_error("write_csv: cannot open " + path);
    for (size_t j = 0; j < header.size(); ++j) {
        if (j) out << ',';
        out << header[j];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (size_t j = 0; j < row.size(); ++j) {
            if (j) out << ',';
            out << row[j];
        }
        out << '\n';
    }
    if (!out) throw io_error("write_csv: write failed for " + path);
}

} // namespace fraclab
