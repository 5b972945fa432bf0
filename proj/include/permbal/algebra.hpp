#pragma once

#include "permbal/arith.hpp"
#include "permbal/permutation.hpp"
#include "permbal/profile.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace permbal {

// Exact rational combination of pattern counts (patterns may have mixed
// orders) plus a constant term. Zero coefficients are never stored.
class PatternCombo {
 public:
  void add(const Pattern& rho, const Rational& coeff);
  void add_constant(const Rational& c) { constant_ += c; }

  const std::map<Pattern, Rational>& terms() const { return terms_; }
  const Rational& constant() const { return constant_; }
  Rational coefficient(const Pattern& rho) const;

  // sum of coeff * #rho(pi) + constant
  Rational evaluate(const Permutation& pi) const;
  // Substitutes the uniform value C(n,r)/r! for every pattern of order r.
  Polynomial uniform_polynomial() const;

  std::string to_string() const;

  friend bool operator==(const PatternCombo&, const PatternCombo&) = default;

 private:
  std::map<Pattern, Rational> terms_;
  Rational constant_ = 0;
};

// The r-profile implied by a k-profile, r < k. Throws
// Error(NonIntegralResult) when the input cannot come from a permutation.
Profile downward_induce(const Profile& p, int r);

// sum over sigma in S_k of #tau(sigma), tau of order k-1; always k^2.
BigInt pattern_content_sum(int k, const Pattern& tau);

// max over tau in S_k of |k! #tau - C(n,k)|, absent patterns counting zero.
BigInt delta_scaled(const Profile& p);
BigInt delta_scaled(const Permutation& pi, int k);
// The unscaled distance delta_scaled / k!.
Rational delta(const Permutation& pi, int k);
bool is_balanced(const Permutation& pi, int k);
bool is_balanced(const Profile& p);

struct AdmissibilityReport {
  std::int64_t n = 0;
  int k = 0;
  bool admissible = false;
  std::optional<int> failing_r;       // smallest r <= k with r! not dividing C(n,r)
  std::optional<int> residue_class;   // n mod 4 for k = 2, n mod 36 for k = 3
};

AdmissibilityReport admissible(std::int64_t n, int k);
// Largest k for which every r <= k passes the divisibility test.
int max_k_bound(std::int64_t n);

// #sigma(pi) * #tau(pi) = sum_rho c(rho) #rho(pi) for every pi, where c(rho)
// counts ordered pairs (A, B) of position sets of rho covering all of rho
// with rho|A ~ sigma and rho|B ~ tau. Throws Error(OrderCapExceeded) when
// |sigma| + |tau| > 8.
PatternCombo expand_product(const Pattern& sigma, const Pattern& tau);

// (#12)^2 - expand_product(12, 12) with every pattern count replaced by its
// uniform value, as a polynomial in n.
Polynomial verify_no_4_balanced();

struct DistanceCoefficients {
  int k = 0;
  // Product of uniform #12 and #(1..k-2) values.
  Rational product_leading, product_second;
  // Expansion of #12 * #(1..k-2) with uniform counts substituted.
  Rational expansion_leading, expansion_second;
};

// Coefficients of N^k and N^(k-1) on both sides, 4 <= k <= 8.
DistanceCoefficients verify_distance_coefficients(int k);
Rational distance_product_leading_closed_form(int k);
Rational distance_product_second_closed_form(int k);
Rational distance_expansion_second_closed_form(int k);

// delta_{pi,k-1} <= k^2 / (n-k+1) * delta_{pi,k}, exactly, 1 < k <= n.
bool check_delta_transfer(const Permutation& pi, int k);

}  // namespace permbal
