#include "oracle.hpp"

#include "permbal/analysis.hpp"
#include "permbal/error.hpp"
#include "permbal/moments.hpp"
#include "permbal/profile.hpp"

#include <doctest.h>

#include <set>

using namespace permbal;

namespace {

Permutation P(std::initializer_list<int> v) { return Permutation::from_one_line(v); }

Permutation from_seq(const oracle::Seq& s) { return Permutation::from_one_line(std::span<const int>(s)); }

// sum_i i^a pi(i)^b with plain integers.
BigInt direct_moment(const oracle::Seq& pi, int a, int b) {
  BigInt sum = 0;
  for (int i = 1; i <= static_cast<int>(pi.size()); ++i) {
    sum += pow(BigInt(i), static_cast<unsigned>(a)) * pow(BigInt(pi[i - 1]), static_cast<unsigned>(b));
  }
  return sum;
}

// Pr[i, j <= x and pi(i), pi(j) <= pi(y)] over uniform i, j, x, y.
Rational enumerate_p_a(const oracle::Seq& pi) {
  const int n = static_cast<int>(pi.size());
  std::int64_t hits = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          hits += i <= x && j <= x && pi[i] <= pi[y] && pi[j] <= pi[y];
  return Rational(hits) / Rational(pow(BigInt(n), 4));
}

// Pr[i, j <= x and pi(i), pi(k) <= pi(y)] over uniform i, j, k, x, y.
Rational enumerate_p_b(const oracle::Seq& pi) {
  const int n = static_cast<int>(pi.size());
  std::int64_t hits = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            hits += i <= x && j <= x && pi[i] <= pi[y] && pi[k] <= pi[y];
  return Rational(hits) / Rational(pow(BigInt(n), 5));
}

}  // namespace

TEST_CASE("evaluating polynomials on permutations") {
  const auto xy = BivariatePoly::x() * BivariatePoly::y();
  CHECK(eval_poly(xy, P({2, 4, 1, 3})) == 25);
  CHECK(eval_poly(BivariatePoly::constant(1), P({3, 1, 2})) == 3);
  const auto diff = BivariatePoly::y().pow(2) + BivariatePoly::x().pow(2) * Rational(-1);
  std::mt19937_64 rng(3);
  for (int n : {1, 5, 12}) CHECK(eval_poly(diff, from_seq(oracle::random_perm(n, rng))) == 0);
  CHECK(xy.total_degree() == 2);
  CHECK(BivariatePoly().total_degree() == -1);
  CHECK((xy + xy * Rational(-1)).is_zero());
  const auto shifted = xy.substitute(BivariatePoly::x() + BivariatePoly::constant(1), BivariatePoly::y());
  CHECK(shifted(Rational(2), Rational(5)) == 15);
}

TEST_CASE("moments from profiles match direct sums") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng() % 20);
    const auto pi = oracle::random_perm(n, rng);
    const int k = std::min(n, 5);
    const MomentEngine engine(profile(from_seq(pi), k));
    for (int s = 0; s <= 4; ++s) {
      for (int a = 0; a <= s; ++a) {
        const int b = s - a;
        if (a * b != 0 && s >= k) continue;
        CHECK(engine.moment(a, b) == direct_moment(pi, a, b));
      }
    }
  }
  CHECK(moment_from_profile(profile(P({2, 4, 1, 3}), 3), 1, 1) == 25);
  CHECK(moment_from_profile(profile(P({2, 4, 1, 3}), 2), 1, 0) == 10);
}

TEST_CASE("moment table shape") {
  std::mt19937_64 rng(8);
  const auto pi = from_seq(oracle::random_perm(11, rng));
  const auto table = moment_table(profile(pi, 4));
  CHECK(table.entries.size() == 10);
  const auto inverse = moment_table(profile(pi.inverse(), 4));
  for (const auto& [e, v] : table.entries) {
    if (e.second == 0) CHECK(v == power_sum(11, e.first));
    CHECK(inverse.entries.at({e.second, e.first}) == v);
  }
  const MomentEngine engine(profile(pi, 3));
  CHECK_THROWS_AS(engine.moment(2, 1), Error);
  CHECK(engine.moment(0, 7) == power_sum(11, 7));
  const auto poly = BivariatePoly::x() * BivariatePoly::y() * Rational(3) + BivariatePoly::constant(Rational(1, 2));
  CHECK(engine.evaluate(poly) == eval_poly(poly, pi));
}

TEST_CASE("inconsistent profiles are rejected") {
  Profile bad(5, 3);
  bad.set(1, 1);  // a lone 132 would give 2/3 of an ascent
  CHECK_THROWS_AS(MomentEngine{bad}, Error);
}

TEST_CASE("marked pattern coefficients") {
  for (int m = 1; m <= 5; ++m) {
    for (const auto& sigma : all_permutations(m)) {
      for (int d = 1; d <= m; ++d) {
        CHECK(marked_coefficient(sigma, d, 0, 0) == (m == 1 ? 1 : 0));
        for (int a = 1; a <= 3; ++a) {
          CHECK(marked_coefficient(sigma, d, a, 0) == marked_coefficient(Permutation::identity(m), d, a, 0));
        }
      }
    }
  }
  // The single point is covered by the single tuple entry.
  CHECK(marked_coefficient(P({1}), 1, 2, 3) == 1);
  CHECK(marked_coefficient(P({1, 2}), 2, 1, 0) == 1);
  CHECK_THROWS_AS(marked_coefficient(P({1, 2}), 3, 1, 1), Error);
}

TEST_CASE("grid functions") {
  std::mt19937_64 rng(5);
  const auto pi = from_seq(oracle::random_perm(9, rng));
  const auto t = uv_tables(pi);
  CHECK(t.u[8][8] == 1);
  CHECK(t.v[8][8] == 1);
  for (int x = 0; x < 9; ++x) {
    for (int y = 0; y < 9; ++y) {
      if (x > 0) CHECK(t.u[x][y] >= t.u[x - 1][y]);
      if (y > 0) CHECK(t.u[x][y] >= t.u[x][y - 1]);
    }
  }
  const auto id = uv_tables(Permutation::identity(7));
  for (int x = 1; x <= 7; ++x)
    for (int y = 1; y <= 7; ++y) CHECK(id.u[x - 1][y - 1] == Rational(std::min(x, y), 7));
}

TEST_CASE("experiment probabilities against enumeration") {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& pi : oracle::all_perms(n)) {
      const auto pr = experiment_probabilities(from_seq(pi));
      CHECK(pr.p_a == enumerate_p_a(pi));
      CHECK(pr.p_b == enumerate_p_b(pi));
    }
  }
  std::mt19937_64 rng(17);
  for (int n : {7, 8, 8}) {
    const auto pi = oracle::random_perm(n, rng);
    const auto pr = experiment_probabilities(from_seq(pi));
    CHECK(pr.p_a == enumerate_p_a(pi));
    CHECK(pr.p_b == enumerate_p_b(pi));
  }
}

TEST_CASE("norm of v") {
  for (int n = 1; n <= 30; ++n) CHECK(v_norm_sq(n) == v_norm_sq_closed_form(n));
  // 36 n^4 ||v||^2 / n^2 is a degree-4 polynomial; five nodes fix it.
  std::vector<Rational> xs, ys;
  for (int n = 1; n <= 5; ++n) {
    xs.emplace_back(n);
    ys.push_back(v_norm_sq(n) * Rational(36 * pow(BigInt(n), 4)));
  }
  const auto fit = Polynomial::interpolate(xs, ys);
  const auto n1 = Polynomial::x() + Polynomial::constant(1);
  const auto n2 = Polynomial::x() * Rational(2) + Polynomial::constant(1);
  CHECK(fit == n1 * n1 * n2 * n2);
  CHECK(fit.leading_coefficient() * Rational(1, 36) == Rational(1, 9));
  for (int n = 6; n <= 12; ++n) CHECK(fit(Rational(n)) == v_norm_sq(n) * Rational(36 * pow(BigInt(n), 4)));
}

TEST_CASE("amplified indicators") {
  for (int n = 1; n <= 200; ++n) {
    const int p = amplification_exponent(n);
    BigInt three = pow(BigInt(3), static_cast<unsigned>(p)), two = pow(BigInt(2), static_cast<unsigned>(p));
    CHECK(three >= 2 * n * two);
    if (p > 0) CHECK(three / 3 < 2 * n * (two / 2));
  }
  for (int n = 2; n <= 6; ++n) {
    for (int t = 1; t <= n; ++t) {
      const auto f = univariate_indicator(n, t, n - 1);
      REQUIRE(f.has_value());
      CHECK((*f)(Rational(t)) == Rational(2, 3));
      for (int x = 1; x <= n; ++x) {
        if (x != t) CHECK(abs((*f)(Rational(x))) <= Rational(1, 3));
      }
    }
  }
  CHECK_FALSE(univariate_indicator(5, 3, 0).has_value());
  // n = 2: P = 4 and linear f, so degree 8.
  const auto ind = build_indicator(2, 1, 2, 9, IndicatorMethod::Amplified);
  CHECK(ind.poly.total_degree() <= 8);
  CHECK(satisfies_indicator_contract(ind.poly, 2, 1, 2));
  CHECK_THROWS_AS(build_indicator(2, 1, 2, 8, IndicatorMethod::Amplified), Error);
  const auto three = build_indicator(3, 2, 2, 40, IndicatorMethod::Amplified);
  CHECK(satisfies_indicator_contract(three.poly, 3, 2, 2));
  CHECK_FALSE(satisfies_indicator_contract(three.poly, 3, 1, 1));
}

TEST_CASE("direct indicators") {
  const auto ind = build_indicator(4, 1, 1, 7);
  CHECK(ind.poly.total_degree() < 7);
  CHECK(satisfies_indicator_contract(ind.poly, 4, 1, 1));
  CHECK_THROWS_AS(build_indicator(4, 2, 2, 2), Error);
  CHECK_THROWS_AS(build_indicator(4, 0, 2, 4), Error);
  for (int n = 4; n <= 7; ++n) {
    const auto& fam = indicator_family(n, n, IndicatorMethod::Direct);
    CHECK(fam.by_point.size() == static_cast<std::size_t>(n * n));
    for (const auto& [pt, i] : fam.by_point) CHECK_FALSE(i.has_value());
  }
  const auto& nine = indicator_family(9, 9, IndicatorMethod::Direct);
  std::set<std::pair<int, int>> certified;
  for (const auto& [pt, i] : nine.by_point) {
    if (!i) continue;
    certified.insert(pt);
    CHECK(i->poly.total_degree() < 9);
    CHECK(satisfies_indicator_contract(i->poly, 9, pt.first, pt.second));
  }
  CHECK(certified == std::set<std::pair<int, int>>{{1, 1}, {1, 9}, {9, 1}, {9, 9}});
}

TEST_CASE("recovering points from the full profile") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 6; ++t) {
    const auto pi = from_seq(oracle::random_perm(9, rng));
    const auto rec = recover_points(profile(pi, 9));
    CHECK(rec.certified_region.size() == 4);
    CHECK(rec.infeasible.size() == 77);
    CHECK(rec.present.size() + rec.absent.size() == 4);
    for (const auto& g : rec.present) CHECK(pi(g.x) == g.y);
    for (const auto& g : rec.absent) CHECK(pi(g.x) != g.y);
    for (const auto& [pt, v] : rec.values) CHECK((v >= 1 || v <= Rational(1, 2)));
  }
  // Corners are occupied by the identity and the reversal alike.
  const auto id = recover_points(profile(Permutation::identity(9), 9));
  CHECK(id.present.size() == 2);
  const auto small = recover_points(profile(P({2, 4, 1, 3}), 4));
  CHECK(small.certified_region.empty());
  CHECK(small.infeasible.size() == 16);
}
