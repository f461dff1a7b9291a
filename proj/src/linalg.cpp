#include "coreproj/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace coreproj {

Matrix Matrix::identity(std::size_t k) {
  Matrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) m(i, i) = 1.0;
  return m;
}

std::optional<Matrix> cholesky(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("cholesky: matrix is not square");
  const std::size_t k = a.rows();
  Matrix l(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    double diag = a(j, j);
    for (std::size_t p = 0; p < j; ++p) diag -= l(j, p) * l(j, p);
    if (!(diag > 0.0)) return std::nullopt;
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < k; ++i) {
      double s = a(i, j);
      for (std::size_t p = 0; p < j; ++p) s -= l(i, p) * l(j, p);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

std::vector<double> cholesky_solve(const Matrix& lower, std::span<const double> b) {
  const std::size_t k = lower.rows();
  if (b.size() != k) throw std::invalid_argument("cholesky_solve: size mismatch");
  std::vector<double> y(b.begin(), b.end());
  // forward: L z = b
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t p = 0; p < i; ++p) y[i] -= lower(i, p) * y[p];
    y[i] /= lower(i, i);
  }
  // backward: L^T y = z
  for (std::size_t i = k; i-- > 0;) {
    for (std::size_t p = i + 1; p < k; ++p) y[i] -= lower(p, i) * y[p];
    y[i] /= lower(i, i);
  }
  return y;
}

double determinant(Matrix a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix is not square");
  const std::size_t k = a.rows();
  double det = 1.0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (std::abs(a(r, c)) > std::abs(a(pivot, c))) pivot = r;
    }
    if (a(pivot, c) == 0.0) return 0.0;
    if (pivot != c) {
      for (std::size_t j = 0; j < k; ++j) std::swap(a(pivot, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < k; ++r) {
      const double f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < k; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace coreproj
