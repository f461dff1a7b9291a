#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace coreproj {

/// Small dense row-major matrix. Sizes here are bounded by the player count,
/// so no blocking or BLAS.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t k);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Lower-triangular L with A = L L^T, or nullopt when A is not (numerically)
/// positive definite.
std::optional<Matrix> cholesky(const Matrix& a);

/// Solves L L^T y = b given the factor from cholesky().
std::vector<double> cholesky_solve(const Matrix& lower, std::span<const double> b);

/// Determinant by LU with partial pivoting.
double determinant(Matrix a);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

}  // namespace coreproj
