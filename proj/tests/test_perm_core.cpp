#include "oracle.hpp"

#include "permbal/error.hpp"
#include "permbal/points.hpp"
#include "permbal/profile.hpp"

#include <doctest.h>

using namespace permbal;

namespace {

Permutation P(std::initializer_list<int> v) { return Permutation::from_one_line(v); }

std::int64_t count_of(const Profile& prof, const Pattern& tau) { return to_int128(prof.count(tau)); }

}  // namespace

TEST_CASE("from_one_line accepts bijections only") {
  CHECK(format_one_line(P({2, 4, 1, 3})) == "2,4,1,3");
  CHECK(P({1}).size() == 1);
  CHECK_THROWS_AS(P({1, 1}), Error);
  try {
    P({1, 1});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotABijection);
  }
  CHECK_THROWS_AS(P({0, 1}), Error);
}

TEST_CASE("parse and format round trip") {
  CHECK(parse_permutation("2413") == P({2, 4, 1, 3}));
  CHECK(parse_permutation("7,6,1,2,5,8,9,4,3") == P({7, 6, 1, 2, 5, 8, 9, 4, 3}));
  CHECK(parse_permutation(" 3 1  2 ") == P({3, 1, 2}));
  CHECK_THROWS_AS(parse_permutation("1,x"), Error);
  CHECK_THROWS_AS(parse_permutation(""), Error);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto v = oracle::random_perm(1 + trial % 30, rng);
    auto p = Permutation::from_one_line(v);
    CHECK(parse_permutation(format_one_line(p)) == p);
  }
  CHECK(pattern_key(P({3, 1, 4, 2})) == "3142");
}

TEST_CASE("lex rank matches enumeration order") {
  for (int k = 1; k <= 6; ++k) {
    auto perms = all_permutations(k);
    for (std::size_t r = 0; r < perms.size(); ++r) {
      CHECK(lex_rank(perms[r]) == r);
      CHECK(lex_unrank(k, r) == perms[r]);
    }
  }
}

TEST_CASE("from_points ranks exact and epsilon coordinates") {
  PointSet a;
  a.add(1, 7);
  a.add(2, 6);
  a.add(3, 1);
  CHECK(from_points(a) == P({3, 2, 1}));
  PointSet b;
  b.add(EpsCoord(1, 1), 5);
  b.add(EpsCoord(1, 2), 3);
  CHECK(from_points(b) == P({2, 1}));
  PointSet c;
  c.add(1, 1);
  c.add(1, 2);
  CHECK_THROWS_AS(from_points(c), Error);
}

TEST_CASE("occurs and induced pattern") {
  auto pi = P({2, 4, 1, 3});
  std::vector<int> s13{1, 3}, s123{1, 2, 3};
  CHECK(occurs(pi, s13, P({2, 1})));
  CHECK_FALSE(occurs(pi, s123, P({1, 2, 3})));
  CHECK(induced_pattern(pi, s123) == P({2, 3, 1}));
  std::vector<int> s234{2, 3, 4};
  CHECK(occurs(Permutation::identity(5), s234, P({1, 2, 3})));
  std::vector<int> bad{3, 1};
  CHECK_THROWS_AS(occurs(pi, bad, P({1, 2})), Error);
  std::vector<int> out_of_range{1, 5};
  CHECK_THROWS_AS(occurs(pi, out_of_range, P({1, 2})), Error);
}

TEST_CASE("profile examples") {
  auto id = profile(Permutation::identity(5), 3);
  CHECK(count_of(id, P({1, 2, 3})) == 10);
  CHECK(id.nonzero().size() == 1);

  auto p2 = profile(P({2, 4, 1, 3}), 2);
  CHECK(count_of(p2, P({1, 2})) == 3);
  CHECK(count_of(p2, P({2, 1})) == 3);

  auto fig = profile(P({7, 6, 1, 2, 5, 8, 9, 4, 3}), 3);
  for (const auto& tau : all_permutations(3)) CHECK(count_of(fig, tau) == 14);

  auto p3 = profile(P({2, 4, 1, 3}), 3);
  CHECK(count_of(p3, P({1, 2, 3})) == 0);
  CHECK(count_of(p3, P({3, 2, 1})) == 0);
  for (auto tau : {P({1, 3, 2}), P({2, 3, 1}), P({2, 1, 3}), P({3, 1, 2})}) CHECK(count_of(p3, tau) == 1);

  CHECK_THROWS_AS(profile(P({1, 2}), 3), Error);
  CHECK_THROWS_AS(profile(P({1, 2}), 0), Error);
}

TEST_CASE("fast and naive profiles agree with the brute-force oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 30);
    auto v = oracle::random_perm(n, rng);
    auto pi = Permutation::from_one_line(v);
    for (int k = 1; k <= std::min(4, n); ++k) {
      auto fast = profile(pi, k, ProfileMethod::Fast);
      auto naive = profile(pi, k, ProfileMethod::Naive);
      CHECK(fast == naive);
      CHECK(fast.total() == binomial(n, static_cast<unsigned>(k)));
      if (n <= 14) {
        for (const auto& tau : oracle::all_perms(k)) {
          CHECK(count_of(fast, Permutation::from_one_line(tau)) == oracle::count_pattern(v, tau));
        }
      }
    }
  }
}

TEST_CASE("fast kernels on larger inputs match naive counting") {
  std::mt19937_64 rng(7);
  auto v = oracle::random_perm(60, rng);
  auto pi = Permutation::from_one_line(v);
  CHECK(profile(pi, 4, ProfileMethod::Fast) == profile(pi, 4, ProfileMethod::Naive));
  CHECK(profile(pi, 3, ProfileMethod::Fast) == profile(pi, 3, ProfileMethod::Naive));
}

TEST_CASE("profile of order above eight uses sparse accumulation") {
  std::mt19937_64 rng(5);
  auto v = oracle::random_perm(11, rng);
  auto prof = profile(Permutation::from_one_line(v), 10);
  CHECK(prof.total() == 11);
  for (const auto& [rank, c] : prof.nonzero()) {
    auto tau = lex_unrank(10, rank);
    CHECK(oracle::count_pattern(v, oracle::Seq(tau.values().begin(), tau.values().end())) == to_int128(c));
  }
}

TEST_CASE("D4 action examples and pattern-count invariance") {
  CHECK(act(D4::Rot90, Permutation::identity(6)) == Permutation::descending(6));
  CHECK(act(D4::Rot90, P({2, 4, 1, 3})) == P({2, 4, 1, 3}));
  CHECK(act(D4::ReflectVertical, P({1, 2})) == P({2, 1}));
  CHECK(act(D4::Transpose, P({2, 4, 1, 3})) == P({2, 4, 1, 3}).inverse());

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 17);
    auto pi = Permutation::from_one_line(oracle::random_perm(n, rng));
    for (D4 g : kAllD4) {
      auto gpi = act(g, pi);
      for (int k = 3; k <= 4; ++k) {
        auto a = profile(pi, k), b = profile(gpi, k);
        for (const auto& tau : all_permutations(k)) CHECK(a.count(tau) == b.count(act(g, tau)));
      }
    }
    auto inv = pi.inverse();
    for (int k = 2; k <= 4; ++k) {
      auto a = profile(pi, k), b = profile(inv, k);
      for (const auto& tau : all_permutations(k)) CHECK(a.count(tau) == b.count(tau.inverse()));
    }
  }
}

TEST_CASE("inverse") {
  CHECK(P({2, 4, 1, 3}).inverse() == P({3, 1, 4, 2}));
  CHECK(Permutation::identity(7).inverse() == Permutation::identity(7));
  auto inv = P({7, 6, 1, 2, 5, 8, 9, 4, 3}).inverse();
  auto prof = profile(inv, 3);
  for (const auto& tau : all_permutations(3)) CHECK(count_of(prof, tau) == 14);
}

TEST_CASE("rotation orbits") {
  auto o = rotation_orbit({1, 2}, 4, OrbitMode::FixedPointFree);
  CHECK(o == std::vector<GridPoint>{{1, 2}, {2, 4}, {3, 1}, {4, 3}});
  auto corners = rotation_orbit({1, 1}, 4);
  CHECK(corners == std::vector<GridPoint>{{1, 1}, {1, 4}, {4, 1}, {4, 4}});
  auto o21 = rotation_orbit({2, 1}, 4);
  CHECK(o21 == std::vector<GridPoint>{{1, 3}, {2, 1}, {3, 4}, {4, 2}});
  CHECK(rotation_orbit({3, 3}, 5).size() == 1);
  CHECK_THROWS_AS(rotation_orbit({1, 1}, 5, OrbitMode::FixedPointFree), Error);
}

TEST_CASE("rotation invariance") {
  CHECK(is_rotation_invariant(P({2, 4, 1, 3})));
  CHECK(is_rotation_invariant(P({7, 6, 1, 2, 5, 8, 9, 4, 3})));
  CHECK_FALSE(is_rotation_invariant(Permutation::identity(4)));
}

TEST_CASE("rotation-invariant permutations come from (A, B, sigma) triples") {
  for (int n = 1; n <= 9; ++n) {
    std::vector<oracle::Seq> scanned;
    for (const auto& v : oracle::all_perms(n)) {
      if (oracle::rotation_fixed(v)) scanned.push_back(v);
    }
    if (n % 2 == 0 && n % 4 != 0) CHECK(scanned.empty());
    if (n % 4 == 0) {
      auto built = enumerate_rotation_invariant(n / 4);
      std::vector<oracle::Seq> got;
      for (const auto& p : built) got.emplace_back(p.values().begin(), p.values().end());
      std::sort(got.begin(), got.end());
      got.erase(std::unique(got.begin(), got.end()), got.end());
      CHECK(got.size() == built.size());
      CHECK(got == scanned);
    }
  }
}
