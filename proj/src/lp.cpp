#include "permbal/lp.hpp"

#include <algorithm>
#include <set>

namespace permbal {

namespace {

// Dictionary form: basic[i] = beta[i] + sum_j d[i][j] * nonbasic[j].
// Variables 0..m-1 are slacks (>= 0), m..m+nz-1 are the free z, m+nz is the
// auxiliary variable of phase one (>= 0).
struct Dictionary {
  std::vector<int> basic, nonbasic;
  std::vector<Rational> beta;
  std::vector<std::vector<Rational>> d;
  std::vector<Rational> obj;  // objective row coefficients over nonbasic
  Rational obj_value = 0;

  void pivot(std::size_t r, std::size_t c) {
    const Rational piv = d[r][c];
    const std::size_t cols = nonbasic.size();
    // Solve row r for the entering variable.
    std::vector<Rational> row(cols);
    for (std::size_t j = 0; j < cols; ++j) row[j] = j == c ? Rational(1) / piv : -d[r][j] / piv;
    const Rational new_beta = -beta[r] / piv;
    for (std::size_t i = 0; i < beta.size(); ++i) {
      if (i == r) continue;
      const Rational f = d[i][c];
      if (f == 0) continue;
      beta[i] += f * new_beta;
      for (std::size_t j = 0; j < cols; ++j) {
        if (j == c) d[i][j] = f * row[c];
        else if (row[j] != 0) d[i][j] += f * row[j];
      }
    }
    if (obj.size() == cols) {
      const Rational f = obj[c];
      if (f != 0) {
        obj_value += f * new_beta;
        for (std::size_t j = 0; j < cols; ++j) {
          if (j == c) obj[j] = f * row[c];
          else if (row[j] != 0) obj[j] += f * row[j];
        }
      }
    }
    d[r] = std::move(row);
    beta[r] = new_beta;
    std::swap(basic[r], nonbasic[c]);
  }
};

}  // namespace

std::optional<std::vector<Rational>> find_feasible_point(const std::vector<std::vector<Rational>>& a,
                                                         const std::vector<Rational>& b) {
  const std::size_t m = a.size();
  const std::size_t nz = m == 0 ? 0 : a[0].size();
  const int free_begin = static_cast<int>(m), aux = static_cast<int>(m + nz);
  auto is_free = [&](int var) { return var >= free_begin && var < aux; };

  Dictionary dict;
  dict.beta = b;
  dict.d.assign(m, std::vector<Rational>(nz));
  for (std::size_t i = 0; i < m; ++i) {
    dict.basic.push_back(static_cast<int>(i));
    for (std::size_t j = 0; j < nz; ++j) dict.d[i][j] = -a[i][j];
  }
  for (std::size_t j = 0; j < nz; ++j) dict.nonbasic.push_back(free_begin + static_cast<int>(j));

  // Move every free variable into the basis; free rows never leave again.
  std::vector<bool> dead(nz, false);
  for (std::size_t c = 0; c < nz; ++c) {
    std::size_t r = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_free(dict.basic[i]) && dict.d[i][c] != 0) {
        r = i;
        break;
      }
    }
    if (r == m) {
      dead[c] = true;  // the column is zero in every sign-constrained row
      continue;
    }
    dict.pivot(r, c);
  }

  auto restricted = [&](std::size_t i) { return !is_free(dict.basic[i]); };
  std::size_t worst = m;
  for (std::size_t i = 0; i < m; ++i) {
    if (restricted(i) && dict.beta[i] < 0 && (worst == m || dict.beta[i] < dict.beta[worst])) worst = i;
  }

  if (worst != m) {
    // Phase one: x_B = beta + D x_N + x0, minimise x0.
    for (std::size_t i = 0; i < m; ++i) dict.d[i].push_back(restricted(i) ? Rational(1) : Rational(0));
    dict.nonbasic.push_back(aux);
    dead.push_back(false);
    const std::size_t aux_col = dict.nonbasic.size() - 1;
    dict.obj.assign(dict.nonbasic.size(), Rational(0));
    dict.obj[aux_col] = -1;  // maximise -x0
    dict.pivot(worst, aux_col);

    // Largest coefficient first; Bland's rule after a run of degenerate pivots,
    // which keeps the method finite.
    int degenerate_run = 0;
    bool bland = false;
    while (true) {
      std::size_t enter = dict.nonbasic.size();
      for (std::size_t j = 0; j < dict.nonbasic.size(); ++j) {
        const int var = dict.nonbasic[j];
        if (is_free(var) || (j < dead.size() && dead[j]) || dict.obj[j] <= 0) continue;
        if (enter == dict.nonbasic.size() ||
            (bland ? var < dict.nonbasic[enter] : dict.obj[j] > dict.obj[enter])) {
          enter = j;
        }
      }
      if (enter == dict.nonbasic.size()) break;
      std::size_t leave = m;
      Rational best_ratio;
      for (std::size_t i = 0; i < m; ++i) {
        if (!restricted(i) || dict.d[i][enter] >= 0) continue;
        const Rational ratio = dict.beta[i] / -dict.d[i][enter];
        if (leave == m || ratio < best_ratio ||
            (ratio == best_ratio && (dict.basic[i] == aux ||
                                     (dict.basic[leave] != aux && dict.basic[i] < dict.basic[leave])))) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m) break;  // cannot happen: -x0 is bounded above by 0
      if (best_ratio == 0) {
        if (++degenerate_run > 50) bland = true;
      } else {
        degenerate_run = 0;
      }
      dict.pivot(leave, enter);
    }
    if (dict.obj_value != 0) return std::nullopt;
  }

  std::vector<Rational> z(nz, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (is_free(dict.basic[i])) z[static_cast<std::size_t>(dict.basic[i] - free_begin)] = dict.beta[i];
  }
  return z;
}

std::optional<std::vector<Rational>> find_feasible_point_lazy(const std::vector<std::vector<Rational>>& a,
                                                              const std::vector<Rational>& b,
                                                              const std::vector<std::size_t>& seed_rows) {
  std::set<std::size_t> active(seed_rows.begin(), seed_rows.end());
  while (true) {
    std::vector<std::vector<Rational>> sub_a;
    std::vector<Rational> sub_b;
    for (std::size_t i : active) {
      sub_a.push_back(a[i]);
      sub_b.push_back(b[i]);
    }
    auto z = find_feasible_point(sub_a, sub_b);
    if (!z) return std::nullopt;
    // Add the most violated rows, a handful at a time.
    std::vector<std::pair<Rational, std::size_t>> violated;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (active.count(i)) continue;
      Rational lhs = 0;
      for (std::size_t j = 0; j < z->size(); ++j) {
        if (a[i][j] != 0) lhs += a[i][j] * (*z)[j];
      }
      if (lhs > b[i]) violated.emplace_back(lhs - b[i], i);
    }
    if (violated.empty()) return z;
    std::sort(violated.begin(), violated.end(), [](const auto& x, const auto& y) {
      return x.first > y.first || (x.first == y.first && x.second < y.second);
    });
    const std::size_t take = std::min<std::size_t>(violated.size(), 24);
    for (std::size_t t = 0; t < take; ++t) active.insert(violated[t].second);
  }
}

}  // namespace permbal
