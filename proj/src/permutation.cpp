#include "permbal/permutation.hpp"

#include "permbal/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace permbal {

Permutation Permutation::from_one_line(std::span<const int> seq) {
  const int n = static_cast<int>(seq.size());
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int v : seq) {
    if (v < 1 || v > n) {
      throw Error(ErrorCode::NotABijection, "value " + std::to_string(v) + " outside 1.." + std::to_string(n));
    }
    if (seen[v]) throw Error(ErrorCode::NotABijection, "value " + std::to_string(v) + " repeated");
    seen[v] = 1;
  }
  return Permutation(std::vector<int>(seq.begin(), seq.end()));
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::descending(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = n - i;
  return Permutation(std::move(v));
}

Permutation Permutation::standardize(std::span<const int> distinct_values) {
  std::vector<int> order(distinct_values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return distinct_values[a] < distinct_values[b]; });
  std::vector<int> out(distinct_values.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (r > 0 && distinct_values[order[r]] == distinct_values[order[r - 1]]) {
      throw Error(ErrorCode::TiedCoordinates, "standardize needs distinct values");
    }
    out[order[r]] = static_cast<int>(r) + 1;
  }
  return Permutation(std::move(out));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) inv[values_[i] - 1] = static_cast<int>(i) + 1;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw Error(ErrorCode::BadIndexSet, "composition of different orders");
  std::vector<int> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[other.values_[i] - 1];
  return Permutation(std::move(out));
}

std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
  if (auto c = a.values_.size() <=> b.values_.size(); c != 0) return c;
  return a.values_ <=> b.values_;
}

// ---------------------------------------------------------------------------

Permutation parse_permutation(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else if (ch >= '0' && ch <= '9') {
      cur.push_back(ch);
    } else {
      throw Error(ErrorCode::ParseError, std::string("unexpected character '") + ch + "' in permutation");
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  if (tokens.empty()) throw Error(ErrorCode::ParseError, "empty permutation");

  std::vector<int> seq;
  if (tokens.size() == 1 && tokens[0].size() > 1) {
    for (char ch : tokens[0]) seq.push_back(ch - '0');
  } else {
    for (const auto& tok : tokens) {
      if (tok.size() > 9) throw Error(ErrorCode::ParseError, "value too large: " + tok);
      seq.push_back(std::stoi(tok));
    }
  }
  return Permutation::from_one_line(seq);
}

std::string format_one_line(const Permutation& p) {
  std::string out;
  for (int i = 1; i <= p.size(); ++i) {
    if (i > 1) out.push_back(',');
    out += std::to_string(p(i));
  }
  return out;
}

std::string pattern_key(const Pattern& p) {
  if (p.size() > 9) return format_one_line(p);
  std::string out;
  for (int v : p.values()) out.push_back(static_cast<char>('0' + v));
  return out;
}

Pattern parse_pattern_key(std::string_view key) { return parse_permutation(key); }

std::uint64_t lex_rank(std::span<const int> v) {
  const std::size_t k = v.size();
  if (k > 20) throw Error(ErrorCode::OrderCapExceeded, "lex_rank supports order <= 20");
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t smaller_after = 0;
    for (std::size_t j = i + 1; j < k; ++j) smaller_after += v[j] < v[i];
    rank = rank * (k - i) + smaller_after;
  }
  return rank;
}

std::uint64_t lex_rank(const Permutation& p) { return lex_rank(p.values()); }

Permutation lex_unrank(int order, std::uint64_t rank) {
  if (order > 20) throw Error(ErrorCode::OrderCapExceeded, "lex_unrank supports order <= 20");
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(order));
  for (int i = order - 1; i >= 0; --i) {
    std::uint64_t base = static_cast<std::uint64_t>(order - i);
    digits[i] = rank % base;
    rank /= base;
  }
  std::vector<int> pool(static_cast<std::size_t>(order));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> out;
  out.reserve(pool.size());
  for (int i = 0; i < order; ++i) {
    out.push_back(pool[digits[i]]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digits[i]));
  }
  return Permutation::from_one_line(out);
}

std::vector<Permutation> all_permutations(int order) {
  if (order > 10) throw Error(ErrorCode::OrderCapExceeded, "all_permutations supports order <= 10");
  std::vector<int> v(static_cast<std::size_t>(order));
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_one_line(v));
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::vector<GridPoint> point_set(const Permutation& p) {
  std::vector<GridPoint> out;
  out.reserve(static_cast<std::size_t>(p.size()));
  for (int i = 1; i <= p.size(); ++i) out.push_back({i, p(i)});
  return out;
}

Permutation from_grid_points(std::span<const GridPoint> points) {
  const int n = static_cast<int>(points.size());
  std::vector<int> values(static_cast<std::size_t>(n), 0);
  for (const auto& pt : points) {
    if (pt.x < 1 || pt.x > n || pt.y < 1 || pt.y > n) {
      throw Error(ErrorCode::TiedCoordinates, "grid point outside [n]^2");
    }
    if (values[pt.x - 1] != 0) throw Error(ErrorCode::TiedCoordinates, "two points share an x-coordinate");
    values[pt.x - 1] = pt.y;
  }
  try {
    return Permutation::from_one_line(values);
  } catch (const Error&) {
    throw Error(ErrorCode::TiedCoordinates, "two points share a y-coordinate");
  }
}

// ---------------------------------------------------------------------------

const char* to_string(D4 g) noexcept {
  switch (g) {
    case D4::Identity: return "identity";
    case D4::Rot90: return "rot90";
    case D4::Rot180: return "rot180";
    case D4::Rot270: return "rot270";
    case D4::ReflectVertical: return "reflect_vertical";
    case D4::ReflectHorizontal: return "reflect_horizontal";
    case D4::Transpose: return "transpose";
    case D4::AntiTranspose: return "antitranspose";
  }
  return "?";
}

GridPoint apply(D4 g, GridPoint p, int n) {
  const int x = p.x, y = p.y, m = n + 1;
  switch (g) {
    case D4::Identity: return {x, y};
    case D4::Rot90: return {y, m - x};
    case D4::Rot180: return {m - x, m - y};
    case D4::Rot270: return {m - y, x};
    case D4::ReflectVertical: return {m - x, y};
    case D4::ReflectHorizontal: return {x, m - y};
    case D4::Transpose: return {y, x};
    case D4::AntiTranspose: return {m - y, m - x};
  }
  return p;
}

Permutation act(D4 g, const Permutation& p) {
  const int n = p.size();
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    GridPoint q = apply(g, {i, p(i)}, n);
    out[q.x - 1] = q.y;
  }
  return Permutation::from_one_line(out);
}

std::vector<GridPoint> rotation_orbit(GridPoint p, int n, OrbitMode mode) {
  if (mode == OrbitMode::FixedPointFree && n % 2 != 0) {
    throw Error(ErrorCode::OddOrder, "fixed-point-free orbits need even n, got " + std::to_string(n));
  }
  if (p.x < 1 || p.x > n || p.y < 1 || p.y > n) throw Error(ErrorCode::BadIndexSet, "point outside [n]^2");
  std::vector<GridPoint> out;
  GridPoint cur = p;
  for (int i = 0; i < 4; ++i) {
    out.push_back(cur);
    cur = apply(D4::Rot90, cur, n);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_rotation_invariant(const Permutation& p) { return act(D4::Rot90, p) == p; }

Permutation rotation_invariant_from(int m, std::span<const int> a_values, std::span<const int> sigma_of_a) {
  const int n = 4 * m;
  std::vector<GridPoint> pts;
  for (std::size_t i = 0; i < a_values.size(); ++i) {
    for (const auto& q : rotation_orbit({a_values[i], sigma_of_a[i]}, n, OrbitMode::FixedPointFree)) {
      pts.push_back(q);
    }
  }
  return from_grid_points(pts);
}

std::vector<Permutation> enumerate_rotation_invariant(int m) {
  std::vector<Permutation> out;
  const int half = 2 * m;
  for (unsigned mask = 0; mask < (1u << half); ++mask) {
    if (__builtin_popcount(mask) != m) continue;
    std::vector<int> a, b;
    for (int i = 0; i < half; ++i) ((mask >> i) & 1u ? a : b).push_back(i + 1);
    std::vector<int> sigma = b;
    do {
      out.push_back(rotation_invariant_from(m, a, sigma));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
  return out;
}

}  // namespace permbal
