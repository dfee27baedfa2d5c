#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace curvkit {

/// Dense row-major matrix of doubles. Sized for the small local problems
/// (2-balls) and desk-scale spectral decompositions.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

    [[nodiscard]] Matrix transposed() const;
    [[nodiscard]] double frobenius_norm() const;
    [[nodiscard]] bool is_symmetric(double tol) const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

std::vector<double> multiply(const Matrix& a, std::span<const double> x);

/// x^T A y
double bilinear(const Matrix& a, std::span<const double> x, std::span<const double> y);

struct SymmetricEigen {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k is the eigenvector for values[k]
};

/// Cyclic Jacobi eigensolver for a real symmetric matrix. Sweeps until the
/// off-diagonal Frobenius norm drops below off_tol * ||A||_F.
SymmetricEigen jacobi_eigen(Matrix a, double off_tol = 1e-12, int max_sweeps = 100);

/// Smallest eigenvalue of a symmetric matrix (Jacobi).
double min_eigenvalue(const Matrix& a);

/// Solves A x = b for symmetric positive definite A (Cholesky). Throws
/// ConvergenceError if A is not numerically positive definite.
std::vector<double> cholesky_solve(const Matrix& a, std::span<const double> b);

}  // namespace curvkit
