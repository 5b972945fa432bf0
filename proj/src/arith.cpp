#include "permbal/arith.hpp"

#include "permbal/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace permbal {

BigInt factorial(unsigned k) {
  BigInt out = 1;
  for (unsigned i = 2; i <= k; ++i) out *= i;
  return out;
}

BigInt binomial(const BigInt& n, unsigned k) {
  if (n < 0) return 0;
  if (BigInt(k) > n) return 0;
  BigInt out = 1;
  for (unsigned i = 0; i < k; ++i) {
    out *= (n - i);
    out /= (i + 1);
  }
  return out;
}

unsigned nu2(const BigInt& value) {
  if (value == 0) throw Error(ErrorCode::NonIntegralResult, "nu2 of zero is undefined");
  return static_cast<unsigned>(boost::multiprecision::lsb(abs(value)));
}

unsigned nu2_factorial(std::uint64_t k) {
  return static_cast<unsigned>(k - static_cast<std::uint64_t>(__builtin_popcountll(k)));
}

BigInt numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
BigInt denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }
bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& q) {
  if (is_integer(q)) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

BigInt parse_bigint(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) throw Error(ErrorCode::ParseError, "empty integer");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') {
      throw Error(ErrorCode::ParseError, "bad integer '" + std::string(text) + "'");
    }
  }
  return BigInt(std::string(text));
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_bigint(text));
  BigInt num = parse_bigint(text.substr(0, slash));
  BigInt den = parse_bigint(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
  return Rational(num, den);
}

BigInt to_bigint(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  BigInt out = static_cast<std::uint64_t>(mag >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(mag & ~std::uint64_t{0});
  return neg ? BigInt(-out) : out;
}

__int128 to_int128(const BigInt& v) {
  if (abs(v) >= (BigInt(1) << 127)) {
    throw Error(ErrorCode::OrderCapExceeded, "value exceeds 128-bit range");
  }
  BigInt mag = abs(v);
  BigInt hi = mag >> 64;
  BigInt lo = mag - (hi << 64);
  unsigned __int128 out = static_cast<unsigned __int128>(hi.convert_to<std::uint64_t>()) << 64;
  out |= lo.convert_to<std::uint64_t>();
  __int128 s = static_cast<__int128>(out);
  return v < 0 ? -s : s;
}

// ---------------------------------------------------------------------------

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const Rational& c, unsigned power) {
  std::vector<Rational> v(power + 1, Rational(0));
  v[power] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::binomial(unsigned r) {
  Polynomial out = constant(1);
  for (unsigned i = 0; i < r; ++i) out = out * Polynomial({Rational(-static_cast<int>(i)), Rational(1)});
  return out * Rational(1, factorial(r));
}

Polynomial Polynomial::interpolate(std::span<const Rational> xs, std::span<const Rational> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorCode::ValidationMismatch, "interpolation node count mismatch");
  Polynomial out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Polynomial basis = constant(1);
    Rational denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      if (xs[i] == xs[j]) throw Error(ErrorCode::ValidationMismatch, "repeated interpolation node");
      basis = basis * Polynomial({Rational(-xs[j]), Rational(1)});
      denom *= xs[i] - xs[j];
    }
    out += basis * Rational(ys[i] / denom);
  }
  return out;
}

Rational Polynomial::coefficient(unsigned power) const {
  return power < coeffs_.size() ? coeffs_[power] : Rational(0);
}

Rational Polynomial::leading_coefficient() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Rational Polynomial::operator()(const Rational& at) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

Polynomial Polynomial::compose(const Polynomial& inner) const {
  Polynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + constant(*it);
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scale) {
  for (auto& c : coeffs_) c *= scale;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> Polynomial::divide(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorCode::ValidationMismatch, "polynomial division by zero");
  Polynomial rem = *this;
  std::vector<Rational> quot(std::max(0, degree() - divisor.degree() + 1), Rational(0));
  while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
    unsigned shift = static_cast<unsigned>(rem.degree() - divisor.degree());
    Rational factor = rem.leading_coefficient() / divisor.leading_coefficient();
    quot[shift] = factor;
    rem -= monomial(factor, shift) * divisor;
  }
  return {Polynomial(std::move(quot)), rem};
}

namespace {

std::vector<BigInt> positive_divisors(BigInt v) {
  v = abs(v);
  std::vector<BigInt> small, large;
  for (BigInt d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      small.push_back(d);
      if (d * d != v) large.push_back(v / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<Rational> Polynomial::rational_roots() const {
  if (is_zero()) throw Error(ErrorCode::ValidationMismatch, "zero polynomial has every root");
  BigInt lcm = 1;
  for (const auto& c : coeffs_) lcm = boost::multiprecision::lcm(lcm, denominator_of(c));
  std::vector<BigInt> ints;
  for (const auto& c : coeffs_) ints.push_back(numerator_of(c * Rational(lcm)));

  std::set<Rational> roots;
  std::size_t low = 0;
  while (ints[low] == 0) ++low;
  if (low > 0) roots.insert(Rational(0));
  if (low + 1 < ints.size()) {
    for (const auto& p : positive_divisors(ints[low])) {
      for (const auto& q : positive_divisors(ints.back())) {
        for (int sign : {1, -1}) {
          Rational cand(BigInt(sign) * p, q);
          if ((*this)(cand) == 0) roots.insert(cand);
        }
      }
    }
  }
  return {roots.begin(), roots.end()};
}

std::string Polynomial::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = mag == 1 && i > 0;
    if (!unit) os << permbal::to_string(mag);
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace permbal
