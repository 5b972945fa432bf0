#pragma once

#include "permbal/arith.hpp"
#include "permbal/permutation.hpp"
#include "permbal/profile.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace permbal {

// Exact polynomial in x and y.
class BivariatePoly {
 public:
  using Exponents = std::pair<int, int>;

  BivariatePoly() = default;
  static BivariatePoly constant(const Rational& c);
  static BivariatePoly monomial(const Rational& c, int a, int b);
  static BivariatePoly x() { return monomial(1, 1, 0); }
  static BivariatePoly y() { return monomial(1, 0, 1); }
  // Embeds p(x) or p(y).
  static BivariatePoly in_x(const Polynomial& p);
  static BivariatePoly in_y(const Polynomial& p);

  // -1 for the zero polynomial.
  int total_degree() const;
  Rational coefficient(int a, int b) const;
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational operator()(const Rational& x, const Rational& y) const;
  // p(X(x,y), Y(x,y))
  BivariatePoly substitute(const BivariatePoly& x_sub, const BivariatePoly& y_sub) const;
  BivariatePoly pow(unsigned e) const;

  BivariatePoly& operator+=(const BivariatePoly& other);
  BivariatePoly& operator*=(const Rational& s);
  friend BivariatePoly operator+(BivariatePoly a, const BivariatePoly& b) { return a += b; }
  friend BivariatePoly operator*(BivariatePoly a, const Rational& s) { return a *= s; }
  friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b);
  friend bool operator==(const BivariatePoly& a, const BivariatePoly& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const Rational& c);
  std::map<Exponents, Rational> terms_;
};

// sum_i p(i, pi(i))
Rational eval_poly(const BivariatePoly& p, const Permutation& pi);

// sum_i i^a for i = 1..n; the same for every permutation.
BigInt power_sum(int n, int a);

// ---------------------------------------------------------------------------
// Moments sum_i i^a pi(i)^b from profile data.
//
// A tuple (i; x_1..x_a; y_1..y_b) with x_s <= i and pi(y_s) <= pi(i) covers a
// set of points whose pattern is sigma with i marked at position d. For a
// fixed marked pattern the number of tuples covering it exactly is
//   c(sigma, d; a, b) = sum over T in sigma \ {d} of (-1)^|T| |L(d)\T|^a |D(d)\T|^b
// with L(d) the points left of or at d and D(d) those below or at d.

// The inclusion-exclusion sum above, taken literally over subsets.
BigInt marked_coefficient(const Pattern& sigma, int d, int a, int b);

class MomentEngine {
 public:
  // `pk` is the k-profile of a permutation; lower profiles are induced from it.
  // Throws Error(InconsistentProfile) when induction is not integral.
  explicit MomentEngine(const Profile& pk);

  int n() const { return n_; }
  int k() const { return k_; }
  // Throws Error(DegreeBudgetExceeded) unless a + b < k or a * b == 0.
  BigInt moment(int a, int b) const;
  // Mixed monomials need a + b < k; pure powers of x or y are always known.
  Rational evaluate(const BivariatePoly& p) const;

 private:
  int n_ = 0, k_ = 0;
  // weight_[{p, q, r}]: sum over marked patterns of the pattern count, where
  // p = |L(d)|, q = |D(d)|, r = |L(d) & D(d)| and L(d) | D(d) is everything.
  std::map<std::tuple<int, int, int>, BigInt> weight_;
};

BigInt moment_from_profile(const Profile& pk, int a, int b);

struct MomentTable {
  int n = 0;
  int k = 0;
  std::map<std::pair<int, int>, BigInt> entries;  // every a + b < k
};
MomentTable moment_table(const Profile& pk);

// ---------------------------------------------------------------------------
// Grid functions u(x,y) = #{i <= x : pi(i) <= y} / n and v(x,y) = xy / n^2.

struct UvTables {
  int n = 0;
  std::vector<std::vector<Rational>> u, v;  // u[x-1][y-1]
};
UvTables uv_tables(const Permutation& pi);

struct ExperimentProbabilities {
  Rational p_a;  // ||u||^2 / n^2
  Rational p_b;  // <u, v> / n^2
};
ExperimentProbabilities experiment_probabilities(const Permutation& pi);

// ||v||^2 / n^2 summed directly over the grid.
Rational v_norm_sq(int n);
// 1/9 + 1/(3n) + 13/(36n^2) + 1/(6n^3) + 1/(36n^4)
Rational v_norm_sq_closed_form(int n);

// ---------------------------------------------------------------------------
// One-sided indicators: I(a,b) >= 1 and 0 <= I(x,y) <= 1/(2n) elsewhere on
// the grid.

enum class IndicatorMethod {
  // ((f_a(x) + 1/3)(f_b(y) + 1/3))^P with P = ceil(log_{3/2}(2n)) and f_t a
  // univariate polynomial with f_t(t) = 2/3, |f_t| <= 1/3 elsewhere.
  Amplified,
  // A bivariate polynomial of total degree < k found directly by exact
  // linear feasibility over the grid.
  Direct,
};

const char* to_string(IndicatorMethod m);

struct Indicator {
  int n = 0, a = 0, b = 0, k = 0;
  IndicatorMethod method = IndicatorMethod::Direct;
  BivariatePoly poly;
};

// Smallest P with (3/2)^P >= 2n.
int amplification_exponent(int n);
// Lowest-degree f_t up to max_degree, or nullopt.
std::optional<Polynomial> univariate_indicator(int n, int t, int max_degree);
// Exact evaluation at all n^2 grid points.
bool satisfies_indicator_contract(const BivariatePoly& p, int n, int a, int b);
// Throws Error(Infeasible) when no polynomial of total degree < k is found.
// The result is checked against the contract before it is returned.
Indicator build_indicator(int n, int a, int b, int k, IndicatorMethod method = IndicatorMethod::Direct);

// Certified indicators for every grid point, computed once per D4 orbit and
// carried to the other points of the orbit. nullopt marks infeasible points.
struct IndicatorFamily {
  int n = 0, k = 0;
  IndicatorMethod method = IndicatorMethod::Direct;
  std::map<std::pair<int, int>, std::optional<Indicator>> by_point;
};
const IndicatorFamily& indicator_family(int n, int k, IndicatorMethod method);

struct Recovery {
  int n = 0, k = 0;
  IndicatorMethod method = IndicatorMethod::Direct;
  std::vector<GridPoint> certified_region;  // points with a certified indicator
  std::vector<GridPoint> present, absent, infeasible;
  std::map<std::pair<int, int>, Rational> values;  // indicator evaluations
};

// Reads every certified point of the grid off the k-profile: present when the
// evaluation is >= 3/4, absent when <= 1/2. Throws Error(AmbiguousValue) in
// between, which the contract rules out.
Recovery recover_points(const Profile& pk, IndicatorMethod method = IndicatorMethod::Direct);

}  // namespace permbal
