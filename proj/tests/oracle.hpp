#pragma once

// Deliberately simple reference implementations used only by the tests. They
// share no code with the library beyond plain std::vector<int> values.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Seq = std::vector<int>;

// Occurrences of tau in pi by recursive choice of positions.
inline std::int64_t count_pattern(const Seq& pi, const Seq& tau) {
  const int n = static_cast<int>(pi.size()), k = static_cast<int>(tau.size());
  std::vector<int> chosen;
  std::int64_t total = 0;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(chosen.size()) == k) {
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          if ((pi[chosen[a]] < pi[chosen[b]]) != (tau[a] < tau[b])) return;
      ++total;
      return;
    }
    for (int i = start; i < n; ++i) {
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return total;
}

inline Seq random_perm(int n, std::mt19937_64& rng) {
  Seq v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

inline std::vector<Seq> all_perms(int k) {
  Seq v(static_cast<std::size_t>(k));
  std::iota(v.begin(), v.end(), 1);
  std::vector<Seq> out;
  do out.push_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

inline std::int64_t choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline bool rotation_fixed(const Seq& pi) {
  const int n = static_cast<int>(pi.size());
  Seq out(pi.size());
  for (int i = 1; i <= n; ++i) out[pi[i - 1] - 1] = n + 1 - i;  // (i, y) -> (y, n+1-i)
  return out == pi;
}

}  // namespace oracle
