#pragma once

// Exact integer and rational scalars used throughout the library.
//
// Everything geometric or algebraic in jetbound is exact; doubles only show
// up when a report is formatted for humans.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace jetbound {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using RationalVector = std::vector<Rational>;
using IntegerVector = std::vector<Integer>;
/// A lattice point. Coordinates of the polytopes handled here stay far below
/// 2^63, so lattice points are plain machine integers.
using Point = std::vector<std::int64_t>;

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Parses "p", "-p", "p/q" (whitespace is not accepted). Throws
/// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

inline Integer numerator(const Rational& value) {
  return boost::multiprecision::numerator(value);
}
inline Integer denominator(const Rational& value) {
  return boost::multiprecision::denominator(value);
}

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// base^exponent for a non-negative exponent.
Rational pow(const Rational& base, unsigned exponent);
Integer pow(const Integer& base, unsigned exponent);

/// Exact integer k-th root if `value` is a perfect k-th power (value >= 0).
bool exact_root(const Integer& value, unsigned k, Integer& root);

/// C(top, bottom) with the convention C(top, bottom) = 0 when bottom > top
/// or bottom < 0. `top` must be non-negative.
Integer binomial(std::int64_t top, std::int64_t bottom);

double to_double(const Rational& value);

RationalVector to_rational(const Point& p);

/// Scales a rational vector by the lcm of its denominators and divides by
/// the gcd of the result. The zero vector maps to the zero vector.
IntegerVector primitive_integer_vector(const RationalVector& v);

}  // namespace jetbound
