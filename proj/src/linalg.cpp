#include "simcal/linalg.hpp"

#include <stdexcept>
#include <string>

namespace simcal {

namespace {

std::string shape_str(const Matrix& m) {
    return std::to_string(m.rows) + "x" + std::to_string(m.cols);
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != m.cols)
            throw std::invalid_argument("Matrix::from_rows: ragged rows");
        std::size_t j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

Vector matvec(const Matrix& m, const Vector& x) {
    if (m.cols != x.size())
        throw std::invalid_argument("matvec: shape mismatch: matrix is " + shape_str(m) +
                                    ", vector length " + std::to_string(x.size()));
    Vector y(m.rows, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        const double* row = m.data.data() + i * m.cols;
        double acc = 0.0;
        for (std::size_t j = 0; j < m.cols; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

Vector transpose_matvec(const Matrix& m, const Vector& y) {
    if (m.rows != y.size())
        throw std::invalid_argument("transpose_matvec: shape mismatch: matrix is " +
                                    shape_str(m) + ", vector length " +
                                    std::to_string(y.size()));
    Vector x(m.cols, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        const double* row = m.data.data() + i * m.cols;
        const double yi = y[i];
        for (std::size_t j = 0; j < m.cols; ++j) x[j] += row[j] * yi;
    }
    return x;
}

Matrix outer(const Vector& a, const Vector& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("outer: vectors must be non-empty");
    Matrix m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
    return m;
}

}  // namespace simcal
