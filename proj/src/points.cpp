#include "permbal/points.hpp"

#include "permbal/error.hpp"

#include <algorithm>
#include <numeric>

namespace permbal {

std::string to_string(const EpsCoord& c) {
  std::string out = to_string(c.base);
  if (c.eps > 0) out += "+" + std::to_string(c.eps) + "e";
  if (c.eps < 0) out += std::to_string(c.eps) + "e";
  return out;
}

Permutation from_points(const PointSet& ps) {
  const auto& pts = ps.points;
  const std::size_t n = pts.size();
  std::vector<std::size_t> by_x(n), by_y(n);
  std::iota(by_x.begin(), by_x.end(), 0);
  std::iota(by_y.begin(), by_y.end(), 0);
  std::sort(by_x.begin(), by_x.end(), [&](auto a, auto b) { return pts[a].x < pts[b].x; });
  std::sort(by_y.begin(), by_y.end(), [&](auto a, auto b) { return pts[a].y < pts[b].y; });
  for (std::size_t i = 1; i < n; ++i) {
    if (pts[by_x[i]].x == pts[by_x[i - 1]].x) {
      throw Error(ErrorCode::TiedCoordinates, "x-coordinate " + to_string(pts[by_x[i]].x) + " repeated");
    }
    if (pts[by_y[i]].y == pts[by_y[i - 1]].y) {
      throw Error(ErrorCode::TiedCoordinates, "y-coordinate " + to_string(pts[by_y[i]].y) + " repeated");
    }
  }
  std::vector<int> y_rank(n);
  for (std::size_t r = 0; r < n; ++r) y_rank[by_y[r]] = static_cast<int>(r) + 1;
  std::vector<int> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = y_rank[by_x[i]];
  return Permutation::from_one_line(values);
}

}  // namespace permbal
