#include "permbal/algebra.hpp"

#include "permbal/error.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace permbal {

void PatternCombo::add(const Pattern& rho, const Rational& coeff) {
  if (coeff == 0) return;
  auto& slot = terms_[rho];
  slot += coeff;
  if (slot == 0) terms_.erase(rho);
}

Rational PatternCombo::coefficient(const Pattern& rho) const {
  auto it = terms_.find(rho);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational PatternCombo::evaluate(const Permutation& pi) const {
  std::map<int, Profile> cache;
  Rational sum = constant_;
  for (const auto& [rho, c] : terms_) {
    if (rho.size() > pi.size()) continue;
    auto it = cache.find(rho.size());
    if (it == cache.end()) it = cache.emplace(rho.size(), profile(pi, rho.size())).first;
    sum += c * Rational(it->second.count(rho));
  }
  return sum;
}

Polynomial PatternCombo::uniform_polynomial() const {
  Polynomial out = Polynomial::constant(constant_);
  for (const auto& [rho, c] : terms_) {
    const unsigned r = static_cast<unsigned>(rho.size());
    out += Polynomial::binomial(r) * (c / Rational(factorial(r)));
  }
  return out;
}

std::string PatternCombo::to_string() const {
  std::ostringstream os;
  bool first = true;
  // Highest order first, matching how the identities are usually written.
  std::vector<std::pair<Pattern, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  for (const auto& [rho, c] : ordered) {
    if (!first) os << " + ";
    os << permbal::to_string(c) << "*#" << pattern_key(rho);
    first = false;
  }
  if (constant_ != 0 || first) {
    if (!first) os << " + ";
    os << permbal::to_string(constant_);
  }
  return os.str();
}

// ---------------------------------------------------------------------------

Profile downward_induce(const Profile& p, int r) {
  const int k = p.order(), n = p.source_order();
  if (r < 1 || r >= k || k > n) {
    throw Error(ErrorCode::KOutOfRange, "need 1 <= r < k <= n, got r=" + std::to_string(r) +
                                            " k=" + std::to_string(k) + " n=" + std::to_string(n));
  }
  Profile acc(n, r);
  for (const auto& [rank, c] : p.nonzero()) {
    auto sub = profile(lex_unrank(k, rank), r, ProfileMethod::Naive);
    for (const auto& [tau, m] : sub.nonzero()) acc.add(tau, m * c);
  }
  const BigInt denom = binomial(n - r, static_cast<unsigned>(k - r));
  Profile out(n, r);
  for (const auto& [tau, c] : acc.nonzero()) {
    if (c % denom != 0) {
      throw Error(ErrorCode::NonIntegralResult, "induced count of " + pattern_key(lex_unrank(r, tau)) +
                                                    " is not an integer");
    }
    out.set(tau, c / denom);
  }
  return out;
}

BigInt pattern_content_sum(int k, const Pattern& tau) {
  if (k < 2 || k > 8 || tau.size() != k - 1) {
    throw Error(ErrorCode::KOutOfRange, "pattern_content_sum needs 2 <= k <= 8 and |tau| = k-1");
  }
  BigInt sum = 0;
  for (const auto& sigma : all_permutations(k)) sum += profile(sigma, k - 1, ProfileMethod::Naive).count(tau);
  return sum;
}

BigInt delta_scaled(const Profile& p) {
  const unsigned k = static_cast<unsigned>(p.order());
  const BigInt kf = factorial(k);
  const BigInt total = binomial(p.source_order(), k);
  // Any pattern missing from the support contributes |0 - C(n,k)|.
  BigInt best = p.nonzero().size() < kf ? total : BigInt(0);
  for (const auto& [rank, c] : p.nonzero()) {
    BigInt d = abs(BigInt(kf * c - total));
    if (d > best) best = d;
  }
  return best;
}

BigInt delta_scaled(const Permutation& pi, int k) { return delta_scaled(profile(pi, k)); }

Rational delta(const Permutation& pi, int k) {
  return Rational(delta_scaled(pi, k)) / Rational(factorial(static_cast<unsigned>(k)));
}

bool is_balanced(const Profile& p) {
  const unsigned k = static_cast<unsigned>(p.order());
  return binomial(p.source_order(), k) % factorial(k) == 0 && delta_scaled(p) == 0;
}

bool is_balanced(const Permutation& pi, int k) { return is_balanced(profile(pi, k)); }

// ---------------------------------------------------------------------------

AdmissibilityReport admissible(std::int64_t n, int k) {
  if (k < 1) throw Error(ErrorCode::KOutOfRange, "k must be positive");
  AdmissibilityReport rep;
  rep.n = n;
  rep.k = k;
  if (k == 2) rep.residue_class = static_cast<int>(n % 4);
  if (k == 3) rep.residue_class = static_cast<int>(n % 36);
  BigInt c = 1;  // C(n, r), built incrementally
  BigInt f = 1;  // r!
  for (int r = 1; r <= k; ++r) {
    c = c * (n - r + 1) / r;
    f *= r;
    if (c % f != 0) {
      rep.failing_r = r;
      break;
    }
  }
  rep.admissible = !rep.failing_r.has_value();
  return rep;
}

int max_k_bound(std::int64_t n) {
  if (n < 2) throw Error(ErrorCode::KOutOfRange, "max_k_bound needs n >= 2");
  BigInt c = 1, f = 1;
  int k = 0;
  for (int r = 1; r <= n; ++r) {
    c = c * (n - r + 1) / r;
    f *= r;
    if (c % f != 0) break;
    k = r;
  }
  return k;
}

// ---------------------------------------------------------------------------

namespace {

// Bitmask of positions -> lex rank of the induced pattern, for one rho.
std::uint64_t induced_rank(std::span<const int> rho, unsigned mask) {
  int vals[8];
  int len = 0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (mask >> i & 1u) vals[len++] = rho[i];
  }
  return lex_rank(std::span<const int>(vals, static_cast<std::size_t>(len)));
}

}  // namespace

PatternCombo expand_product(const Pattern& sigma, const Pattern& tau) {
  const int s = sigma.size(), t = tau.size();
  if (s + t > 8) throw Error(ErrorCode::OrderCapExceeded, "expand_product supports |sigma| + |tau| <= 8");
  const std::uint64_t sigma_rank = lex_rank(sigma), tau_rank = lex_rank(tau);
  PatternCombo out;
  for (int m = std::max(s, t); m <= s + t; ++m) {
    const unsigned full = (1u << m) - 1u;
    const int overlap = s + t - m;  // |A intersect B|
    for (const auto& rho : all_permutations(m)) {
      const auto vals = rho.values();
      std::int64_t pairs = 0;
      for (unsigned a = 0; a <= full; ++a) {
        if (std::popcount(a) != s || induced_rank(vals, a) != sigma_rank) continue;
        const unsigned rest = full & ~a;
        // B = rest plus exactly `overlap` positions of A.
        for (unsigned x = a;; x = (x - 1) & a) {
          if (std::popcount(x) == overlap && induced_rank(vals, rest | x) == tau_rank) ++pairs;
          if (x == 0) break;
        }
      }
      if (pairs != 0) out.add(rho, pairs);
    }
  }
  return out;
}

Polynomial verify_no_4_balanced() {
  const Pattern p12 = Permutation::from_one_line({1, 2});
  const Polynomial uniform12 = Polynomial::binomial(2) * Rational(1, 2);
  return uniform12 * uniform12 - expand_product(p12, p12).uniform_polynomial();
}

Rational distance_product_leading_closed_form(int k) {
  const Rational f = Rational(factorial(static_cast<unsigned>(k - 2)));
  return Rational(1) / (4 * f * f);
}

Rational distance_product_second_closed_form(int k) {
  const Rational f = Rational(factorial(static_cast<unsigned>(k - 2)));
  return Rational(-k * k + 5 * k - 8) / (8 * f * f);
}

Rational distance_expansion_second_closed_form(int k) {
  const Rational f1 = Rational(factorial(static_cast<unsigned>(k - 1)));
  const Rational f2 = Rational(factorial(static_cast<unsigned>(k - 2)));
  return Rational(-3 * k * k * k + 22 * k * k - 59 * k + 48) / (24 * f1 * f2);
}

DistanceCoefficients verify_distance_coefficients(int k) {
  if (k < 4 || k > 8) throw Error(ErrorCode::OrderCapExceeded, "distance coefficients need 4 <= k <= 8");
  const Pattern p12 = Permutation::from_one_line({1, 2});
  const Pattern id = Permutation::identity(k - 2);
  const Polynomial u12 = Polynomial::binomial(2) * Rational(1, 2);
  const Polynomial uid = Polynomial::binomial(static_cast<unsigned>(k - 2)) *
                         (Rational(1) / Rational(factorial(static_cast<unsigned>(k - 2))));
  const Polynomial product = u12 * uid;
  const Polynomial expansion = expand_product(p12, id).uniform_polynomial();
  DistanceCoefficients out;
  out.k = k;
  out.product_leading = product.coefficient(static_cast<unsigned>(k));
  out.product_second = product.coefficient(static_cast<unsigned>(k - 1));
  out.expansion_leading = expansion.coefficient(static_cast<unsigned>(k));
  out.expansion_second = expansion.coefficient(static_cast<unsigned>(k - 1));
  return out;
}

bool check_delta_transfer(const Permutation& pi, int k) {
  const int n = pi.size();
  if (k < 2 || k > n) throw Error(ErrorCode::KOutOfRange, "need 1 < k <= n");
  const Rational lhs = delta(pi, k - 1);
  const Rational rhs = Rational(k * k, n - k + 1) * delta(pi, k);
  return lhs <= rhs;
}

}  // namespace permbal
