#include "oracle.hpp"

#include "permbal/algebra.hpp"
#include "permbal/analysis.hpp"
#include "permbal/error.hpp"
#include "permbal/profile.hpp"

#include <doctest.h>

#include <set>

using namespace permbal;

namespace {

Permutation P(std::initializer_list<int> v) { return Permutation::from_one_line(v); }
oracle::Seq seq(const Permutation& p) { return {p.values().begin(), p.values().end()}; }

// Scaled distance straight from the definition.
std::int64_t oracle_scaled_delta(const oracle::Seq& pi, int k) {
  std::int64_t kf = 1;
  for (int i = 2; i <= k; ++i) kf *= i;
  const std::int64_t total = oracle::choose(static_cast<std::int64_t>(pi.size()), k);
  std::int64_t best = 0;
  for (const auto& tau : oracle::all_perms(k)) {
    best = std::max(best, std::abs(kf * oracle::count_pattern(pi, tau) - total));
  }
  return best;
}

const Permutation kNine = P({3, 4, 9, 8, 5, 2, 1, 6, 7});
const Permutation kNineInverse = P({7, 6, 1, 2, 5, 8, 9, 4, 3});

}  // namespace

TEST_CASE("random helpers are deterministic and uniform enough") {
  auto a = substream(42, 3), b = substream(42, 3), c = substream(43, 2);
  CHECK(a() == b());
  CHECK(substream(42, 3)() != c());
  auto rng = substream(1, 0);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[uniform_below(rng, 7)];
  for (int h : hits) CHECK((h > 850 && h < 1150));
  for (int n : {1, 2, 10, 50}) {
    auto pi = random_permutation(n, rng);
    auto v = seq(pi);
    std::sort(v.begin(), v.end());
    for (int i = 0; i < n; ++i) CHECK(v[i] == i + 1);
  }
  CHECK_THROWS_AS(uniform_below(rng, 0), Error);
}

TEST_CASE("symmetry orbits") {
  CHECK(symmetry_orbit(kNine) == std::vector<Permutation>{kNine, kNineInverse});
  CHECK(canonical_form(kNineInverse) == kNine);
  CHECK(symmetry_orbit(P({1, 2, 3})).size() == 2);
  CHECK(symmetry_orbit(P({2, 4, 1, 3})).size() == 2);
  CHECK(symmetry_orbit(P({1, 3, 2, 4, 5})).size() == 4);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    auto pi = random_permutation(8, rng);
    auto orbit = symmetry_orbit(pi);
    CHECK(8 % orbit.size() == 0);
    CHECK(canonical_form(pi) == orbit.front());
    for (const auto& q : orbit) CHECK(canonical_form(q) == orbit.front());
  }
}

TEST_CASE("exhaustive census of 3-balanced permutations of order 9") {
  ExhaustiveOptions opts;
  opts.count_balanced = true;
  opts.expand_orbits = true;
  auto rep = exhaustive_min_delta(9, 3, opts);
  CHECK(rep.best_delta == 0);
  REQUIRE(rep.count_balanced.has_value());
  CHECK(*rep.count_balanced == 2);
  CHECK(rep.witnesses == std::vector<Permutation>{kNine, kNineInverse});
  CHECK(rep.nodes_visited == 362880);
  CHECK(oracle_scaled_delta(seq(kNine), 3) == 0);
}

TEST_CASE("2-balanced permutations exist exactly for n = 0, 1 mod 4") {
  ExhaustiveOptions opts;
  opts.count_balanced = true;
  for (int n = 2; n <= 9; ++n) {
    auto rep = exhaustive_min_delta(n, 2, opts);
    const bool expected = n % 4 == 0 || n % 4 == 1;
    CHECK((rep.best_delta == 0) == expected);
    CHECK((*rep.count_balanced > 0) == expected);
  }
  CHECK(exhaustive_min_delta(6, 2).best_delta > 0);
}

TEST_CASE("symmetry reduction agrees with the full sweep and the oracle") {
  for (int n = 3; n <= 7; ++n) {
    for (int k = 2; k <= std::min(4, n); ++k) {
      ExhaustiveOptions sym;
      sym.count_balanced = true;
      sym.expand_orbits = true;
      ExhaustiveOptions full = sym;
      full.use_symmetry = false;
      auto a = exhaustive_min_delta(n, k, sym);
      auto b = exhaustive_min_delta(n, k, full);
      CHECK(a.best_delta == b.best_delta);
      CHECK(*a.count_balanced == *b.count_balanced);
      CHECK(a.witnesses == b.witnesses);
      if (n <= 6) {
        std::int64_t best = -1;
        for (const auto& pi : oracle::all_perms(n)) {
          const auto d = oracle_scaled_delta(pi, k);
          if (best < 0 || d < best) best = d;
        }
        CHECK(a.best_delta == best);
      }
    }
  }
}

TEST_CASE("exhaustive search is independent of the thread count") {
  ExhaustiveOptions one, three;
  one.count_balanced = three.count_balanced = true;
  three.threads = 3;
  auto a = exhaustive_min_delta(8, 3, one), b = exhaustive_min_delta(8, 3, three);
  CHECK(a.best_delta == b.best_delta);
  CHECK(a.witnesses == b.witnesses);
  CHECK(*a.count_balanced == *b.count_balanced);
  CHECK(a.nodes_visited == b.nodes_visited);
}

TEST_CASE("exhaustive search refuses oversized sweeps") {
  CHECK_THROWS_AS(exhaustive_min_delta(12, 3), Error);
  ExhaustiveOptions small;
  small.budget = 1000;
  CHECK_THROWS_AS(exhaustive_min_delta(7, 3, small), Error);
  CHECK_THROWS_AS(exhaustive_min_delta(5, 6), Error);
}

TEST_CASE("smallest 4-distance at orders 8 and 9") {
  // Regression constants from the exhaustive sweep (scaled by 4! = 24).
  auto eight = exhaustive_min_delta(8, 4);
  auto nine = exhaustive_min_delta(9, 4);
  CHECK(eight.best_delta == 70);
  CHECK(nine.best_delta == 114);
  for (const auto& w : eight.witnesses) CHECK(oracle_scaled_delta(seq(w), 4) == 70);
  for (const auto& w : nine.witnesses) CHECK(oracle_scaled_delta(seq(w), 4) == 114);
}

TEST_CASE("greedy search") {
  SUBCASE("order 9 finds the balanced pair") {
    auto rep = greedy_search(9, 3, 7);
    CHECK(rep.best_delta == 0);
    REQUIRE(rep.witnesses.size() == 1);
    CHECK((rep.witnesses[0] == kNine || rep.witnesses[0] == kNineInverse));
    CHECK(rep.seed == 7u);
  }
  SUBCASE("order 45 reaches zero") {
    auto rep = greedy_search(45, 3, 4);
    CHECK(rep.best_delta == 0);
    CHECK(oracle_scaled_delta(seq(rep.witnesses[0]), 3) == 0);
  }
  SUBCASE("inadmissible order stays positive") {
    GreedyOptions opts;
    opts.budget = 200'000;
    auto rep = greedy_search(10, 3, 1, opts);
    CHECK(rep.best_delta > 0);
    CHECK(rep.best_delta == oracle_scaled_delta(seq(rep.witnesses[0]), 3));
  }
  SUBCASE("deterministic for any thread count") {
    GreedyOptions one, two;
    two.threads = 2;
    auto a = greedy_search(20, 3, 11, one), b = greedy_search(20, 3, 11, two);
    CHECK(a.best_delta == 0);
    CHECK(a.witnesses == b.witnesses);
    CHECK(a.nodes_visited == b.nodes_visited);
    CHECK(greedy_search(20, 3, 11, one).witnesses == a.witnesses);
  }
}

TEST_CASE("3142 in the one-sided grid family") {
  for (int n = 2; n <= 4; ++n) {
    CHECK(es_3142_closed_form(n) == oracle::count_pattern(seq(es(n, EsSign::Plus)), {3, 1, 4, 2}));
  }
  for (int n = 5; n <= 8; ++n) {
    CHECK(es_3142_closed_form(n) == profile(es(n, EsSign::Plus), 4, ProfileMethod::Naive).count(P({3, 1, 4, 2})));
  }
  for (int n = 9; n <= 20; ++n) {
    CHECK(es_3142_closed_form(n) == profile(es(n, EsSign::Plus), 4).count(P({3, 1, 4, 2})));
  }
  const auto dev = es_3142_deviation_polynomial();
  CHECK(dev.degree() == 7);
  CHECK(dev.leading_coefficient() == Rational(1, 144));
  for (int n = 2; n <= 10; ++n) {
    const BigInt nn = BigInt(n) * n;
    CHECK(dev(Rational(n)) == Rational(es_3142_closed_form(n)) - Rational(binomial(nn, 4)) / 24);
  }
  CHECK_THROWS_AS(es_3142_closed_form(1), Error);
}

TEST_CASE("one-sided profile polynomials") {
  auto fit = interpolate_es(EsSign::Plus, {1, 2, 3, 4, 5, 6, 7, 8, 9}, {10, 11});
  std::set<std::string> degree7;
  for (const auto& pp : fit.polynomials) {
    CHECK(pp.deviation.degree() <= 7);
    if (pp.deviation.degree() == 7) degree7.insert(pattern_key(pp.pattern));
  }
  CHECK(degree7 == std::set<std::string>{"2413", "3142"});
  CHECK(fit.delta_degree == 7);
  CHECK(fit.delta_leading == Rational(1, 144));
}

TEST_CASE("two-sided profile polynomials") {
  auto fit = interpolate_es_pm();
  REQUIRE(fit.polynomials.size() == 24);
  const Polynomial order = Polynomial::monomial(2, 2);
  CHECK(fit.total == Polynomial::binomial(4).compose(order));
  const ProfilePolynomial* p2413 = nullptr;
  const ProfilePolynomial* p3142 = nullptr;
  for (const auto& pp : fit.polynomials) {
    CHECK(pp.count.degree() <= 8);
    if (pattern_key(pp.pattern) == "2413") p2413 = &pp;
    if (pattern_key(pp.pattern) == "3142") p3142 = &pp;
  }
  REQUIRE(p2413);
  REQUIRE(p3142);
  CHECK(p2413->count == p3142->count);
  CHECK(fit.delta_degree == 6);
  // Computed value; the largest deviation comes from 1234.
  CHECK(fit.delta_leading == Rational(5, 36));
  // Brute-force counts on the smallest orders.
  for (int n = 2; n <= 3; ++n) {
    const auto pi = seq(es(n, EsSign::Both));
    for (const auto& pp : fit.polynomials) {
      CHECK(pp.count(Rational(n)) == Rational(oracle::count_pattern(pi, seq(pp.pattern))));
    }
  }
  CHECK_THROWS_AS(interpolate_es(EsSign::Both, {1, 2, 3, 4}, {5}), Error);
}

TEST_CASE("concentration window") {
  // n = 100, k = 2: delta in (1000/200, 4 * 1000), so the scaled value lies in (10, 8000).
  CHECK_FALSE(in_concentration_window(10, 100, 2));
  CHECK(in_concentration_window(11, 100, 2));
  CHECK(in_concentration_window(7999, 100, 2));
  CHECK_FALSE(in_concentration_window(8000, 100, 2));
}

TEST_CASE("random profile statistics") {
  auto a = random_profile_stats(60, 3, 40, 9, 1);
  auto b = random_profile_stats(60, 3, 40, 9, 3);
  CHECK(a.scaled_deltas == b.scaled_deltas);
  CHECK(a.mean_increasing == b.mean_increasing);
  CHECK(a.in_window == b.in_window);
  CHECK(a.expected_increasing == doctest::Approx(34220.0 / 6));
  CHECK(std::abs(a.mean_increasing - a.expected_increasing) < 5 * a.stderr_increasing + 1e-9);
  auto rng = substream(9, 0);
  CHECK(a.scaled_deltas[0] == delta_scaled(random_permutation(60, rng), 3));
}
