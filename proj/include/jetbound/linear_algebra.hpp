#pragma once

// Dense exact linear algebra over Q and Z. Matrices are row-major
// vector-of-rows; every row of a matrix must have the same length.

#include <cstddef>
#include <optional>

#include "jetbound/rational.hpp"

namespace jetbound::linalg {

/// Rank over Q by Gauss-Jordan elimination.
std::size_t rank(Matrix<Rational> a);

/// Rank over Q of an integer matrix by fraction-free (Bareiss) elimination.
std::size_t bareiss_rank(Matrix<Integer> a);

/// A basis of {x : a x = 0}. `cols` is needed when `a` has no rows.
std::vector<RationalVector> nullspace(const Matrix<Rational>& a, std::size_t cols);

Rational determinant(Matrix<Rational> a);

std::optional<Matrix<Rational>> inverse(const Matrix<Rational>& a);

/// Unique solution of a square system, or nullopt when singular.
std::optional<RationalVector> solve(const Matrix<Rational>& a, const RationalVector& b);

Matrix<Rational> transpose(const Matrix<Rational>& a);

Rational dot(const RationalVector& a, const RationalVector& b);

}  // namespace jetbound::linalg
