#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace simcal {

using Vector = std::vector<double>;

// Dense row-major matrix of 64-bit reals. Shapes are explicit and every
// dimension mismatch is a hard error; nothing broadcasts.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // rows*cols entries, row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static Matrix identity(std::size_t n);
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
};

// y_i = sum_j m[i,j] * x[j]
Vector matvec(const Matrix& m, const Vector& x);

// x_j = sum_i m[i,j] * y[i]
Vector transpose_matvec(const Matrix& m, const Vector& y);

// result[i,j] = a[i] * b[j]
Matrix outer(const Vector& a, const Vector& b);

}  // namespace simcal
