#include "permbal/profile.hpp"

#include "permbal/error.hpp"

#include <algorithm>
#include <array>

namespace permbal {

Profile::Profile(int source_order, int k) : n_(source_order), k_(k) {
  if (k < 1 || k > kMaxOrder) throw Error(ErrorCode::OrderCapExceeded, "profile order must be in 1..20");
}

BigInt Profile::count_by_rank(std::uint64_t rank) const {
  auto it = counts_.find(rank);
  return it == counts_.end() ? BigInt(0) : it->second;
}

BigInt Profile::count(const Pattern& tau) const {
  if (tau.size() != k_) {
    throw Error(ErrorCode::KOutOfRange, "pattern order " + std::to_string(tau.size()) + " vs profile order " +
                                            std::to_string(k_));
  }
  return count_by_rank(lex_rank(tau));
}

void Profile::add(std::uint64_t rank, const BigInt& amount) {
  if (amount == 0) return;
  auto& slot = counts_[rank];
  slot += amount;
  if (slot == 0) counts_.erase(rank);
}

void Profile::set(std::uint64_t rank, const BigInt& amount) {
  if (amount == 0) {
    counts_.erase(rank);
  } else {
    counts_[rank] = amount;
  }
}

BigInt Profile::total() const {
  BigInt sum = 0;
  for (const auto& [rank, c] : counts_) sum += c;
  return sum;
}

std::vector<BigInt> Profile::dense() const {
  if (k_ > 10) throw Error(ErrorCode::OrderCapExceeded, "dense profile supports order <= 10");
  std::vector<BigInt> out(static_cast<std::size_t>(factorial(static_cast<unsigned>(k_)).convert_to<std::uint64_t>()),
                          BigInt(0));
  for (const auto& [rank, c] : counts_) out[rank] = c;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_positions(const Permutation& pi, std::span<const int> positions) {
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] < 1 || positions[i] > pi.size()) {
      throw Error(ErrorCode::BadIndexSet, "position " + std::to_string(positions[i]) + " outside 1.." +
                                              std::to_string(pi.size()));
    }
    if (i > 0 && positions[i] <= positions[i - 1]) {
      throw Error(ErrorCode::BadIndexSet, "positions must be strictly increasing");
    }
  }
}

}  // namespace

Pattern induced_pattern(const Permutation& pi, std::span<const int> positions) {
  check_positions(pi, positions);
  std::vector<int> vals;
  vals.reserve(positions.size());
  for (int s : positions) vals.push_back(pi(s));
  return Permutation::standardize(vals);
}

bool occurs(const Permutation& pi, std::span<const int> positions, const Pattern& tau) {
  if (static_cast<int>(positions.size()) != tau.size()) {
    throw Error(ErrorCode::BadIndexSet, "index set size differs from pattern order");
  }
  check_positions(pi, positions);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = 0; j < positions.size(); ++j) {
      bool lhs = pi(positions[i]) < pi(positions[j]);
      bool rhs = tau(static_cast<int>(i) + 1) < tau(static_cast<int>(j) + 1);
      if (lhs != rhs) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

DominanceTable::DominanceTable(std::span<const int> values)
    : n_(static_cast<int>(values.size())), stride_(values.size() + 1), cells_(stride_ * stride_, 0) {
  for (int x = 1; x <= n_; ++x) {
    const std::uint32_t* prev = &cells_[static_cast<std::size_t>(x - 1) * stride_];
    std::uint32_t* row = &cells_[static_cast<std::size_t>(x) * stride_];
    const int v = values[static_cast<std::size_t>(x - 1)];
    for (int y = 0; y <= n_; ++y) row[y] = prev[y] + (y >= v ? 1u : 0u);
  }
}

std::int64_t DominanceTable::rect(int x1, int x2, int y1, int y2) const {
  x1 = std::max(x1, 1);
  y1 = std::max(y1, 1);
  x2 = std::min(x2, n_);
  y2 = std::min(y2, n_);
  if (x1 > x2 || y1 > y2) return 0;
  return static_cast<std::int64_t>(at(x2, y2)) - at(x1 - 1, y2) - at(x2, y1 - 1) + at(x1 - 1, y1 - 1);
}

namespace {

using Counts = std::vector<__int128>;

std::size_t factorial_size(int k) {
  std::size_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

Counts naive_dense(std::span<const int> values, int k) {
  const int n = static_cast<int>(values.size());
  Counts out(factorial_size(k), 0);
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<int> sub(static_cast<std::size_t>(k));
  while (true) {
    for (int i = 0; i < k; ++i) sub[i] = values[idx[i]];
    ++out[lex_rank(sub)];
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

Counts fast2(std::span<const int> values) {
  const int n = static_cast<int>(values.size());
  std::vector<int> tree(static_cast<std::size_t>(n) + 1, 0);
  __int128 inversions = 0;
  for (int i = 0; i < n; ++i) {
    // values seen so far that exceed values[i]
    int le = 0;
    for (int y = values[i]; y > 0; y -= y & -y) le += tree[y];
    inversions += i - le;
    for (int y = values[i]; y <= n; y += y & -y) ++tree[y];
  }
  __int128 pairs = static_cast<__int128>(n) * (n - 1) / 2;
  return {pairs - inversions, inversions};
}

// Ranks in S3: 123=0 132=1 213=2 231=3 312=4 321=5. With l/r the number of
// smaller values left/right of position i and L/R the larger ones:
//   #123 = sum l*R, #321 = sum L*r, #123 + #132 = sum C(R,2),
//   #312 + #321 = sum C(r,2), #132 + #231 = sum l*r, #213 + #312 = sum L*R.
Counts fast3(std::span<const int> values) {
  const int n = static_cast<int>(values.size());
  std::vector<int> tree(static_cast<std::size_t>(n) + 1, 0);
  __int128 s123 = 0, s321 = 0, first_low = 0, first_high = 0, mid_high = 0, mid_low = 0;
  for (int i = 0; i < n; ++i) {
    const int v = values[i];
    int l = 0;
    for (int y = v - 1; y > 0; y -= y & -y) l += tree[y];
    for (int y = v; y <= n; y += y & -y) ++tree[y];
    const __int128 L = i - l;
    const __int128 r = (v - 1) - l;
    const __int128 R = (n - 1 - i) - r;
    s123 += l * R;
    s321 += L * r;
    first_low += R * (R - 1) / 2;
    first_high += r * (r - 1) / 2;
    mid_high += l * r;
    mid_low += L * R;
  }
  const __int128 s132 = first_low - s123, s312 = first_high - s321;
  return {s123, s132, mid_low - s312, mid_high - s132, s312, s321};
}

// kRank4[orient][band_a][band_d][d_above_a]: the S4 rank of (a, j, k, d) where
// orient says whether pi(j) > pi(k), band_* place pi(a), pi(d) below, between
// or above {pi(j), pi(k)}, and the last index breaks ties inside one band.
struct Rank4Table {
  std::array<std::array<std::array<std::array<std::uint8_t, 2>, 3>, 3>, 2> rank{};
  Rank4Table() {
    // Value layout: band 0 = {1,2}, lo = 3, band 1 = {4,5}, hi = 6, band 2 = {7,8}.
    for (int orient = 0; orient < 2; ++orient) {
      const int vj = orient == 0 ? 3 : 6;
      const int vk = orient == 0 ? 6 : 3;
      for (int ba = 0; ba < 3; ++ba) {
        for (int bd = 0; bd < 3; ++bd) {
          for (int up = 0; up < 2; ++up) {
            int va = 1 + 3 * ba, vd = 1 + 3 * bd;
            if (ba == bd) (up ? vd : va) += 1;
            std::array<int, 4> v{va, vj, vk, vd};
            rank[orient][ba][bd][up] = static_cast<std::uint8_t>(lex_rank(v));
          }
        }
      }
    }
  }
};

// Anchors the middle pair (j, k). Points left of j and right of k fall into
// three value bands around {pi(j), pi(k)}; cross-band combinations are band
// count products, and same-band pairs need the number of (a, d) with
// pi(d) < pi(a), which a Fenwick tree over values on the left side supplies
// as a prefix sum of W_k(pi(a) - 1) with W_k(y) = #{d > k : pi(d) <= y}.
Counts fast4(std::span<const int> values) {
  static const Rank4Table kTable;
  const int n = static_cast<int>(values.size());
  DominanceTable table(values);
  std::array<__int128, 24> acc{};
  std::vector<std::int64_t> weight_tree(static_cast<std::size_t>(n) + 1);
  std::vector<std::int64_t> count_tree(static_cast<std::size_t>(n) + 1);

  auto prefix = [n](const std::vector<std::int64_t>& tree, int y) {
    std::int64_t s = 0;
    for (y = std::min(y, n); y > 0; y -= y & -y) s += tree[y];
    return s;
  };
  auto bump = [n](std::vector<std::int64_t>& tree, int y, std::int64_t w) {
    for (; y <= n; y += y & -y) tree[y] += w;
  };

  for (int k = 3; k < n; ++k) {
    const int vk = values[k - 1];
    auto right_le = [&](int y) -> std::int64_t {  // W_k(y)
      if (y <= 0) return 0;
      return static_cast<std::int64_t>(table.at(n, y)) - table.at(k, y);
    };
    std::fill(weight_tree.begin(), weight_tree.end(), 0);
    std::fill(count_tree.begin(), count_tree.end(), 0);
    for (int j = 2; j < k; ++j) {
      const int va_new = values[j - 2];
      bump(weight_tree, va_new, right_le(va_new - 1));
      bump(count_tree, va_new, 1);

      const int vj = values[j - 1];
      const int orient = vj > vk ? 1 : 0;
      const int lo = std::min(vj, vk), hi = std::max(vj, vk);
      const std::array<int, 3> band_lo{1, lo + 1, hi + 1};
      const std::array<int, 3> band_hi{lo - 1, hi - 1, n};

      std::array<std::int64_t, 3> left{}, right{}, same_below{};
      for (int b = 0; b < 3; ++b) {
        left[b] = prefix(count_tree, band_hi[b]) - prefix(count_tree, band_lo[b] - 1);
        right[b] = right_le(band_hi[b]) - right_le(band_lo[b] - 1);
        const std::int64_t weights = prefix(weight_tree, band_hi[b]) - prefix(weight_tree, band_lo[b] - 1);
        same_below[b] = weights - left[b] * right_le(band_lo[b] - 1);
      }
      const auto& rank = kTable.rank[orient];
      for (int ba = 0; ba < 3; ++ba) {
        if (left[ba] == 0) continue;
        for (int bd = 0; bd < 3; ++bd) {
          if (ba != bd) {
            acc[rank[ba][bd][0]] += static_cast<__int128>(left[ba]) * right[bd];
          } else {
            acc[rank[ba][ba][0]] += same_below[ba];
            acc[rank[ba][ba][1]] += static_cast<__int128>(left[ba]) * right[ba] - same_below[ba];
          }
        }
      }
    }
  }
  return Counts(acc.begin(), acc.end());
}

}  // namespace

std::vector<__int128> dense_profile(std::span<const int> values, int k, ProfileMethod method) {
  const int n = static_cast<int>(values.size());
  if (k < 1 || k > n) {
    throw Error(ErrorCode::KOutOfRange, "k = " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  if (k > 8) throw Error(ErrorCode::OrderCapExceeded, "dense profiles support k <= 8");
  if (method == ProfileMethod::Fast) {
    if (k == 1) return {n};
    if (k == 2) return fast2(values);
    if (k == 3) return fast3(values);
    if (k == 4 && n <= 16384) return fast4(values);
  }
  return naive_dense(values, k);
}

Profile profile(const Permutation& pi, int k, ProfileMethod method) {
  const int n = pi.size();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::KOutOfRange, "k = " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  Profile out(n, k);
  if (k <= 8) {
    auto counts = dense_profile(pi.values(), k, method);
    for (std::size_t r = 0; r < counts.size(); ++r) out.set(r, to_bigint(counts[r]));
    return out;
  }
  // Sparse accumulation for large k.
  std::map<std::uint64_t, std::int64_t> acc;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<int> sub(static_cast<std::size_t>(k));
  const auto values = pi.values();
  while (true) {
    for (int i = 0; i < k; ++i) sub[i] = values[idx[i]];
    ++acc[lex_rank(sub)];
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  for (const auto& [rank, c] : acc) out.set(rank, c);
  return out;
}

}  // namespace permbal
