#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permbal {

// A bijection on {1..n} in one-line notation. Positions and values are both
// 1-based at the public surface.
class Permutation {
 public:
  Permutation() = default;

  // Throws Error(NotABijection) unless seq is a bijection on {1..seq.size()}.
  static Permutation from_one_line(std::span<const int> seq);
  static Permutation from_one_line(std::initializer_list<int> seq) {
    return from_one_line(std::span<const int>(seq.begin(), seq.size()));
  }
  static Permutation identity(int n);
  static Permutation descending(int n);
  // Relative order of arbitrary distinct values, e.g. {7, 2, 9} -> 213.
  static Permutation standardize(std::span<const int> distinct_values);

  int size() const { return static_cast<int>(values_.size()); }
  int operator()(int position) const { return values_[static_cast<std::size_t>(position - 1)]; }
  std::span<const int> values() const { return values_; }

  Permutation inverse() const;
  // (this o other)(i) = this(other(i))
  Permutation compose(const Permutation& other) const;

  // Shorter permutations sort first; equal lengths compare lexicographically.
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation& a, const Permutation& b) = default;

 private:
  explicit Permutation(std::vector<int> values) : values_(std::move(values)) {}
  std::vector<int> values_;
};

// Patterns are permutations; the alias marks the role.
using Pattern = Permutation;

// Comma- or whitespace-separated 1-based values. A single token made only of
// digits and longer than one character is read digit by digit ("2413").
Permutation parse_permutation(std::string_view text);
// "7,6,1,2,5,8,9,4,3"
std::string format_one_line(const Permutation& p);
// Digit string for order <= 9, comma form beyond.
std::string pattern_key(const Pattern& p);
Pattern parse_pattern_key(std::string_view key);

// Lexicographic rank among all permutations of the same order (Lehmer code),
// valid for order <= 20.
std::uint64_t lex_rank(const Permutation& p);
std::uint64_t lex_rank(std::span<const int> distinct_values);
Permutation lex_unrank(int order, std::uint64_t rank);
// All permutations of the given order in lexicographic order (order <= 10).
std::vector<Permutation> all_permutations(int order);

struct GridPoint {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

std::vector<GridPoint> point_set(const Permutation& p);
// Throws Error(TiedCoordinates) when the points do not form a permutation
// diagram of order n.
Permutation from_grid_points(std::span<const GridPoint> points);

// The dihedral group of the square acting on the diagram {(i, pi(i))}.
enum class D4 {
  Identity,
  Rot90,   // (x, y) -> (y, n+1-x)
  Rot180,
  Rot270,
  ReflectVertical,    // mirror across a vertical axis: reverse
  ReflectHorizontal,  // mirror across a horizontal axis: complement
  Transpose,          // main diagonal: inverse
  AntiTranspose,
};

inline constexpr D4 kAllD4[] = {D4::Identity,        D4::Rot90,          D4::Rot180,
                                D4::Rot270,          D4::ReflectVertical, D4::ReflectHorizontal,
                                D4::Transpose,       D4::AntiTranspose};

const char* to_string(D4 g) noexcept;
GridPoint apply(D4 g, GridPoint p, int n);
Permutation act(D4 g, const Permutation& p);

enum class OrbitMode {
  Any,              // the centre of an odd grid is its own orbit
  FixedPointFree,   // only defined for even n; throws OddOrder otherwise
};

// Orbit of p under the 90-degree rotation of [n]^2, sorted, without repeats.
std::vector<GridPoint> rotation_orbit(GridPoint p, int n, OrbitMode mode = OrbitMode::Any);
bool is_rotation_invariant(const Permutation& p);

// Rotation-invariant permutation of order 4m built from a bipartition
// A u B = [2m] (|A| = |B| = m, a_values = A ascending) and the bijection
// i -> sigma_of_a[idx(i)] from A onto B.
Permutation rotation_invariant_from(int m, std::span<const int> a_values, std::span<const int> sigma_of_a);
// Every (A, B, sigma) triple for the given m, in a deterministic order.
std::vector<Permutation> enumerate_rotation_invariant(int m);

}  // namespace permbal
