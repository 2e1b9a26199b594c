#include "jetbound/rational.hpp"

#include <cctype>
#include <stdexcept>

#include <gmp.h>

namespace jetbound {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer_literal(text)) {
      throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    }
    return Rational(parse_integer(text));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den)) {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  }
  Integer d = parse_integer(den);
  if (d == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(parse_integer(num), d);
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string to_string(const Integer& value) { return value.str(); }

Integer floor(const Rational& value) {
  Integer q;
  mpz_fdiv_q(q.backend().data(), numerator(value).backend().data(),
             denominator(value).backend().data());
  return q;
}

Integer ceil(const Rational& value) {
  Integer q;
  mpz_cdiv_q(q.backend().data(), numerator(value).backend().data(),
             denominator(value).backend().data());
  return q;
}

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

Rational pow(const Rational& base, unsigned exponent) {
  return Rational(boost::multiprecision::pow(numerator(base), exponent),
                  boost::multiprecision::pow(denominator(base), exponent));
}

Integer pow(const Integer& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

bool exact_root(const Integer& value, unsigned k, Integer& root) {
  if (value < 0 || k == 0) return false;
  return mpz_root(root.backend().data(), value.backend().data(), k) != 0;
}

Integer binomial(std::int64_t top, std::int64_t bottom) {
  if (bottom < 0 || bottom > top) return 0;
  Integer out;
  mpz_bin_uiui(out.backend().data(), static_cast<unsigned long>(top),
               static_cast<unsigned long>(bottom));
  return out;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

RationalVector to_rational(const Point& p) {
  RationalVector out;
  out.reserve(p.size());
  for (auto c : p) out.emplace_back(c);
  return out;
}

IntegerVector primitive_integer_vector(const RationalVector& v) {
  Integer scale = 1;
  for (const auto& c : v) scale = lcm(scale, denominator(c));
  IntegerVector out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& c : v) {
    Integer x = numerator(c) * (scale / denominator(c));
    g = gcd(g, x);
    out.push_back(std::move(x));
  }
  if (g > 1) {
    for (auto& x : out) x /= g;
  }
  return out;
}

}  // namespace jetbound
