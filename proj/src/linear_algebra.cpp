#include "jetbound/linear_algebra.hpp"

#include <stdexcept>
#include <utility>

namespace jetbound::linalg {

namespace {

std::size_t column_count(const Matrix<Rational>& a, std::size_t fallback = 0) {
  return a.empty() ? fallback : a.front().size();
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix<Rational>& a) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = a.size();
  const std::size_t cols = column_count(a);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(Matrix<Rational> a) { return rref(a).size(); }

std::size_t bareiss_rank(Matrix<Integer> a) {
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  const std::size_t cols = a.front().size();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        // Exact division is guaranteed by Sylvester's identity.
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

std::vector<RationalVector> nullspace(const Matrix<Rational>& a, std::size_t cols) {
  Matrix<Rational> m = a;
  const std::size_t n = column_count(a, cols);
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(n, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational determinant(Matrix<Rational> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

std::optional<Matrix<Rational>> inverse(const Matrix<Rational>& a) {
  const std::size_t n = a.size();
  Matrix<Rational> aug(n, RationalVector(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("inverse: matrix is not square");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots.back() >= n) return std::nullopt;
  Matrix<Rational> inv(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  }
  return inv;
}

std::optional<RationalVector> solve(const Matrix<Rational>& a, const RationalVector& b) {
  const std::size_t n = a.size();
  Matrix<Rational> aug(n, RationalVector(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n] = b[i];
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots.back() >= n) return std::nullopt;
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n];
  return x;
}

Matrix<Rational> transpose(const Matrix<Rational>& a) {
  if (a.empty()) return {};
  Matrix<Rational> t(a.front().size(), RationalVector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  }
  return t;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace jetbound::linalg
