#pragma once

#include "permbal/arith.hpp"
#include "permbal/permutation.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace permbal {

// base + eps * epsilon for an infinitesimal epsilon > 0, compared
// lexicographically. Realizes "+epsilon" insertions and infinitesimal
// rotations exactly.
struct EpsCoord {
  Rational base;
  std::int64_t eps = 0;

  EpsCoord() = default;
  EpsCoord(Rational b, std::int64_t e = 0) : base(std::move(b)), eps(e) {}  // NOLINT(implicit)
  EpsCoord(int b, std::int64_t e = 0) : base(b), eps(e) {}                   // NOLINT(implicit)

  friend std::strong_ordering operator<=>(const EpsCoord& a, const EpsCoord& b) {
    if (a.base < b.base) return std::strong_ordering::less;
    if (b.base < a.base) return std::strong_ordering::greater;
    return a.eps <=> b.eps;
  }
  friend bool operator==(const EpsCoord& a, const EpsCoord& b) { return a.base == b.base && a.eps == b.eps; }
};

std::string to_string(const EpsCoord& c);

struct PlanarPoint {
  EpsCoord x;
  EpsCoord y;
  friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

// No two points may share an x-coordinate or a y-coordinate; checked when the
// set is turned into a permutation.
struct PointSet {
  std::vector<PlanarPoint> points;

  void add(PlanarPoint p) { points.push_back(std::move(p)); }
  void add(EpsCoord x, EpsCoord y) { points.push_back({std::move(x), std::move(y)}); }
  std::size_t size() const { return points.size(); }
};

// Sort by x, rank-normalize y. Throws Error(TiedCoordinates).
Permutation from_points(const PointSet& ps);

}  // namespace permbal
