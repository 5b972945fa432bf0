#pragma once

// Exact integer and rational arithmetic shared by every module, plus a small
// univariate polynomial type over the rationals.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permbal {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

BigInt factorial(unsigned k);
BigInt binomial(const BigInt& n, unsigned k);
inline BigInt binomial(std::int64_t n, unsigned k) { return binomial(BigInt(n), k); }

// Largest s with 2^s | value; value must be non-zero.
unsigned nu2(const BigInt& value);
// Legendre: nu2(k!) = k - popcount(k).
unsigned nu2_factorial(std::uint64_t k);

BigInt numerator_of(const Rational& q);
BigInt denominator_of(const Rational& q);
bool is_integer(const Rational& q);

// "p/q" when q != 1, "p" otherwise.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& v);
// Accepts "p", "-p", "p/q". Throws Error(ParseError).
Rational parse_rational(std::string_view text);
BigInt parse_bigint(std::string_view text);

BigInt to_bigint(__int128 v);
__int128 to_int128(const BigInt& v);

// Dense univariate polynomial: coeffs_[i] multiplies x^i. Trailing zeros are
// trimmed so degree() is exact; the zero polynomial has degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, unsigned power);
  static Polynomial x() { return monomial(1, 1); }
  // x (x-1) ... (x-r+1) / r!
  static Polynomial binomial(unsigned r);
  // Lagrange interpolation through (xs[i], ys[i]); xs must be distinct.
  static Polynomial interpolate(std::span<const Rational> xs, std::span<const Rational> ys);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Rational coefficient(unsigned power) const;
  Rational leading_coefficient() const;
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Rational operator()(const Rational& at) const;
  Polynomial compose(const Polynomial& inner) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scale);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  // Distinct rational roots, ascending (rational root theorem on the
  // integer-scaled polynomial). Throws on the zero polynomial.
  std::vector<Rational> rational_roots() const;
  // Quotient and remainder of division by a non-zero divisor.
  std::pair<Polynomial, Polynomial> divide(const Polynomial& divisor) const;

  // Human-readable, highest power first, e.g. "1/9*n^6 - 2*n + 1".
  std::string to_string(std::string_view var = "n") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace permbal
