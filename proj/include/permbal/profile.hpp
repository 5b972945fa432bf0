#pragma once

#include "permbal/arith.hpp"
#include "permbal/permutation.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace permbal {

// Occurrence counts of every order-k pattern in a permutation of order n.
// Patterns are interned by lexicographic rank; absent keys count zero, so the
// profile conceptually always has k! entries.
class Profile {
 public:
  static constexpr int kMaxOrder = 20;

  Profile() = default;
  Profile(int source_order, int k);

  int order() const { return k_; }
  int source_order() const { return n_; }

  BigInt count(const Pattern& tau) const;
  BigInt count_by_rank(std::uint64_t rank) const;
  void add(std::uint64_t rank, const BigInt& amount);
  void set(std::uint64_t rank, const BigInt& amount);

  BigInt total() const;
  // Non-zero entries keyed by lexicographic rank.
  const std::map<std::uint64_t, BigInt>& nonzero() const { return counts_; }
  // All k! counts in lexicographic pattern order (k <= 10).
  std::vector<BigInt> dense() const;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  int n_ = 0;
  int k_ = 0;
  std::map<std::uint64_t, BigInt> counts_;
};

enum class ProfileMethod { Naive, Fast };

// Throws Error(BadIndexSet) unless positions is strictly increasing within
// [1, n] and has tau.size() entries.
bool occurs(const Permutation& pi, std::span<const int> positions, const Pattern& tau);
Pattern induced_pattern(const Permutation& pi, std::span<const int> positions);

// Naive enumerates all C(n,k) position sets. Fast uses inversion counting for
// k = 2, per-position smaller/larger counts for k = 3 and an anchored middle pair for
// k = 4; larger k falls back to enumeration. Throws Error(KOutOfRange).
Profile profile(const Permutation& pi, int k, ProfileMethod method = ProfileMethod::Fast);

// Dense counts indexed by lexicographic rank, 128-bit accumulators. Used by
// the hot loops that would otherwise convert through BigInt.
std::vector<__int128> dense_profile(std::span<const int> values, int k, ProfileMethod method = ProfileMethod::Fast);

// Number of positions i <= x with pi(i) <= y, for 0 <= x, y <= n. The table
// behind the k = 3 and k = 4 kernels, exposed for the u/v grid functions.
class DominanceTable {
 public:
  explicit DominanceTable(std::span<const int> values);
  int n() const { return n_; }
  std::uint32_t at(int x, int y) const { return cells_[static_cast<std::size_t>(x) * stride_ + y]; }
  // Positions in [x1, x2] with values in [y1, y2]; empty ranges count 0.
  std::int64_t rect(int x1, int x2, int y1, int y2) const;

 private:
  int n_;
  std::size_t stride_;
  std::vector<std::uint32_t> cells_;
};

}  // namespace permbal
