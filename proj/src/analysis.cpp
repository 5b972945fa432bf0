#include "permbal/analysis.hpp"

#include "permbal/error.hpp"
#include "permbal/profile.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

namespace permbal {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) + index));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::KOutOfRange, "empty range");
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

Permutation random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
    std::swap(v[i], v[j]);
  }
  return Permutation::from_one_line(v);
}

namespace {

// Runs body(worker) on `threads` workers and rethrows the first failure.
template <class Body>
void run_workers(unsigned threads, Body body) {
  threads = std::max(1u, threads);
  if (threads == 1) {
    body(0u);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex mu;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        body(w);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct Deviation {
  __int128 linf = 0;
  __int128 l2 = 0;
};

Deviation deviation_of(std::span<const int> values, int k, __int128 total, __int128 kf) {
  const auto counts = dense_profile(values, k);
  Deviation d;
  for (__int128 c : counts) {
    const __int128 e = kf * c - total;
    const __int128 a = e < 0 ? -e : e;
    d.linf = std::max(d.linf, a);
    d.l2 += e * e;
  }
  return d;
}

__int128 factorial128(int k) {
  __int128 f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

__int128 choose128(int n, int k) {
  if (k < 0 || k > n) return 0;
  __int128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<Permutation> symmetry_orbit(const Permutation& pi) {
  std::vector<Permutation> out;
  for (D4 g : kAllD4) out.push_back(act(g, pi));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Permutation canonical_form(const Permutation& pi) { return symmetry_orbit(pi).front(); }

namespace {

// True when no D4 image of v is lexicographically smaller; images are
// compared as they are built so most rejections stop early.
bool is_canonical(const std::vector<int>& v, std::vector<int>& scratch) {
  const int n = static_cast<int>(v.size());
  for (D4 g : kAllD4) {
    if (g == D4::Identity) continue;
    for (int i = 1; i <= n; ++i) {
      GridPoint q = apply(g, {i, v[i - 1]}, n);
      scratch[q.x - 1] = q.y;
    }
    if (std::lexicographical_compare(scratch.begin(), scratch.end(), v.begin(), v.end())) return false;
  }
  return true;
}

int orbit_size(const std::vector<int>& v) {
  return static_cast<int>(symmetry_orbit(Permutation::from_one_line(v)).size());
}

}  // namespace

SearchReport exhaustive_min_delta(int n, int k, const ExhaustiveOptions& opts) {
  if (k < 1 || k > n || k > 8) throw Error(ErrorCode::KOutOfRange, "exhaustive search needs 1 <= k <= min(n, 8)");
  if (n > 20 || factorial(static_cast<unsigned>(n)) > opts.budget) {
    throw Error(ErrorCode::BudgetExceeded, std::to_string(n) + "! permutations exceed the budget of " +
                                               std::to_string(opts.budget));
  }
  const __int128 total = choose128(n, k), kf = factorial128(k);

  struct Partial {
    __int128 best = -1;
    std::vector<std::vector<int>> minimizers;
    __int128 balanced = 0;
    std::uint64_t nodes = 0;
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(n)));
  std::vector<Partial> parts(threads);

  run_workers(threads, [&](unsigned w) {
    Partial& part = parts[w];
    std::vector<int> v(static_cast<std::size_t>(n)), scratch(static_cast<std::size_t>(n));
    for (int first = 1 + static_cast<int>(w); first <= n; first += static_cast<int>(threads)) {
      v[0] = first;
      for (int i = 1, x = 1; i < n; ++i, ++x) {
        if (x == first) ++x;
        v[i] = x;
      }
      do {
        ++part.nodes;
        if (opts.use_symmetry && !is_canonical(v, scratch)) continue;
        const __int128 d = deviation_of(v, k, total, kf).linf;
        if (part.best < 0 || d < part.best) {
          part.best = d;
          part.minimizers.clear();
        }
        if (d == part.best) part.minimizers.push_back(v);
        if (opts.count_balanced && d == 0) part.balanced += opts.use_symmetry ? orbit_size(v) : 1;
      } while (std::next_permutation(v.begin() + 1, v.end()));
    }
  });

  SearchReport rep;
  rep.n = n;
  rep.k = k;
  rep.method = "exhaustive";
  __int128 best = -1, balanced = 0;
  for (const auto& p : parts) {
    rep.nodes_visited += p.nodes;
    balanced += p.balanced;
    if (p.best >= 0 && (best < 0 || p.best < best)) best = p.best;
  }
  std::vector<Permutation> wit;
  for (const auto& p : parts) {
    if (p.best != best) continue;
    for (const auto& v : p.minimizers) {
      auto pi = Permutation::from_one_line(v);
      if (opts.expand_orbits && opts.use_symmetry) {
        for (auto& q : symmetry_orbit(pi)) wit.push_back(std::move(q));
      } else {
        wit.push_back(std::move(pi));
      }
    }
  }
  std::sort(wit.begin(), wit.end());
  wit.erase(std::unique(wit.begin(), wit.end()), wit.end());
  rep.best_delta = to_bigint(best);
  rep.witnesses = std::move(wit);
  if (opts.count_balanced) rep.count_balanced = to_bigint(balanced);
  return rep;
}

// ---------------------------------------------------------------------------

SearchReport greedy_search(int n, int k, std::uint64_t seed, const GreedyOptions& opts) {
  if (k < 1 || k > n || k > 8) throw Error(ErrorCode::KOutOfRange, "greedy search needs 1 <= k <= min(n, 8)");
  const __int128 total = choose128(n, k), kf = factorial128(k);
  const int tenure = 7 + n / 4;

  struct Outcome {
    __int128 best = -1;
    std::vector<int> witness;
    std::uint64_t evaluations = 0;
  };

  auto climb = [&](std::uint64_t r) {
    Outcome out;
    auto rng = substream(seed, r);
    const auto start = random_permutation(n, rng);
    std::vector<int> v(start.values().begin(), start.values().end());
    Deviation cur = deviation_of(v, k, total, kf);
    ++out.evaluations;
    out.best = cur.linf;
    out.witness = v;
    __int128 best_l2 = cur.l2;
    // tabu[i * n + j]: first step at which swapping positions i < j is allowed again
    std::vector<std::uint64_t> tabu(static_cast<std::size_t>(n) * n, 0);
    std::uint64_t stall = 0;
    for (std::uint64_t step = 0; out.best > 0 && stall < opts.stall_limit && out.evaluations < opts.budget; ++step) {
      __int128 pick_l2 = -1;
      int pi = -1, pj = -1;
      std::uint64_t ties = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          std::swap(v[i], v[j]);
          const Deviation d = deviation_of(v, k, total, kf);
          std::swap(v[i], v[j]);
          ++out.evaluations;
          if (tabu[static_cast<std::size_t>(i) * n + j] > step && d.l2 >= best_l2) continue;
          if (pick_l2 < 0 || d.l2 < pick_l2) {
            pick_l2 = d.l2;
            pi = i;
            pj = j;
            ties = 1;
          } else if (d.l2 == pick_l2 && uniform_below(rng, ++ties) == 0) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi < 0) break;
      std::swap(v[pi], v[pj]);
      tabu[static_cast<std::size_t>(pi) * n + pj] =
          step + 1 + tenure + uniform_below(rng, static_cast<std::uint64_t>(tenure) + 1);
      cur = deviation_of(v, k, total, kf);
      ++stall;
      if (cur.l2 < best_l2) {
        best_l2 = cur.l2;
        stall = 0;
      }
      if (cur.linf < out.best) {
        out.best = cur.linf;
        out.witness = v;
      }
    }
    return out;
  };

  // Restart r depends only on (seed, r). Restarts run in batches of `threads`,
  // then are consumed in index order until one reaches zero or the budget is
  // spent, so the report does not depend on the thread count.
  const unsigned threads = std::max(1u, opts.threads);
  SearchReport rep;
  rep.n = n;
  rep.k = k;
  rep.method = "greedy";
  rep.seed = seed;
  __int128 best = -1;
  std::vector<int> witness;
  bool finished = false;
  for (std::uint64_t base = 0; !finished; base += threads) {
    std::vector<Outcome> batch(threads);
    run_workers(threads, [&](unsigned w) { batch[w] = climb(base + w); });
    for (const auto& o : batch) {
      rep.nodes_visited += o.evaluations;
      if (best < 0 || o.best < best) {
        best = o.best;
        witness = o.witness;
      }
      if (best == 0 || rep.nodes_visited >= opts.budget) {
        finished = true;
        break;
      }
    }
  }
  rep.best_delta = to_bigint(best);
  rep.witnesses.push_back(Permutation::from_one_line(witness));
  return rep;
}

// ---------------------------------------------------------------------------

BigInt es_3142_closed_form(int n) {
  if (n < 2) throw Error(ErrorCode::KOutOfRange, "es_3142_closed_form needs n >= 2");
  const BigInt c = binomial(n + 2, 4);
  return c * c;
}

Polynomial es_3142_deviation_polynomial() {
  const Polynomial shift = Polynomial::x() + Polynomial::constant(2);
  const Polynomial c = Polynomial::binomial(4).compose(shift);
  const Polynomial square = Polynomial::x() * Polynomial::x();
  return c * c - Polynomial::binomial(4).compose(square) * Rational(1, 24);
}

EsInterpolation interpolate_es(EsSign sign, const std::vector<int>& nodes, const std::vector<int>& holdout) {
  const int copies = sign == EsSign::Both ? 2 : 1;
  auto counts_at = [&](int n) {
    const auto pi = es(n, sign);
    if (pi.size() < 4) return std::vector<__int128>(24, 0);
    return dense_profile(pi.values(), 4);
  };

  std::vector<std::vector<Rational>> ys(24);
  std::vector<Rational> xs;
  for (int n : nodes) {
    xs.emplace_back(n);
    const auto c = counts_at(n);
    for (int r = 0; r < 24; ++r) ys[r].emplace_back(to_bigint(c[r]));
  }

  EsInterpolation out;
  out.sign = sign;
  out.nodes = nodes;
  out.holdout = holdout;
  // N = copies * n^2; the uniform value is C(N, 4) / 24.
  const Polynomial order = Polynomial::monomial(copies, 2);
  const Polynomial uniform = Polynomial::binomial(4).compose(order) * Rational(1, 24);
  for (int r = 0; r < 24; ++r) {
    ProfilePolynomial pp;
    pp.pattern = lex_unrank(4, static_cast<std::uint64_t>(r));
    pp.count = Polynomial::interpolate(xs, ys[r]);
    pp.deviation = pp.count - uniform;
    out.total += pp.count;
    out.polynomials.push_back(std::move(pp));
  }

  for (int n : holdout) {
    const auto c = counts_at(n);
    for (int r = 0; r < 24; ++r) {
      if (out.polynomials[r].count(Rational(n)) != Rational(to_bigint(c[r]))) {
        throw Error(ErrorCode::ValidationMismatch, "polynomial for " + pattern_key(out.polynomials[r].pattern) +
                                                       " misses the count at n = " + std::to_string(n));
      }
    }
  }

  out.delta_degree = -1;
  for (const auto& pp : out.polynomials) {
    const int d = pp.deviation.degree();
    const Rational lc = d < 0 ? Rational(0) : abs(pp.deviation.leading_coefficient());
    if (d > out.delta_degree || (d == out.delta_degree && lc > out.delta_leading)) {
      out.delta_degree = d;
      out.delta_leading = lc;
    }
  }
  return out;
}

EsInterpolation interpolate_es_pm() {
  return interpolate_es(EsSign::Both, {1, 2, 3, 4, 5, 6, 7, 8, 9}, {10, 11, 12});
}

// ---------------------------------------------------------------------------

bool in_concentration_window(const BigInt& scaled_delta, int n, int k) {
  // delta = D / k!. Lower: delta > n^(k-1/2) / (100 k!)  <=>  (100 D)^2 > n^(2k-1).
  // Upper: delta < 2 k! n^(k-1/2)  <=>  D^2 < 4 (k!)^4 n^(2k-1).
  const BigInt power = pow(BigInt(n), static_cast<unsigned>(2 * k - 1));
  const BigInt kf = factorial(static_cast<unsigned>(k));
  const BigInt lower = 100 * scaled_delta;
  return lower * lower > power && scaled_delta * scaled_delta < 4 * kf * kf * kf * kf * power;
}

ProfileStats random_profile_stats(int n, int k, int samples, std::uint64_t seed, unsigned threads) {
  if (k < 2 || k > n || k > 8) throw Error(ErrorCode::KOutOfRange, "stats need 2 <= k <= min(n, 8)");
  if (samples < 1) throw Error(ErrorCode::KOutOfRange, "need at least one sample");
  const __int128 total = choose128(n, k), kf = factorial128(k);
  std::vector<__int128> deltas(static_cast<std::size_t>(samples)), increasing(static_cast<std::size_t>(samples));
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(samples)));
  run_workers(threads, [&](unsigned w) {
    for (int s = static_cast<int>(w); s < samples; s += static_cast<int>(threads)) {
      auto rng = substream(seed, static_cast<std::uint64_t>(s));
      const auto pi = random_permutation(n, rng);
      const auto counts = dense_profile(pi.values(), k);
      __int128 best = 0;
      for (__int128 c : counts) {
        const __int128 e = kf * c - total;
        best = std::max(best, e < 0 ? -e : e);
      }
      deltas[s] = best;
      increasing[s] = counts[0];
    }
  });

  ProfileStats st;
  st.n = n;
  st.k = k;
  st.samples = samples;
  st.seed = seed;
  double sum = 0, sum_sq = 0;
  for (int s = 0; s < samples; ++s) {
    st.scaled_deltas.push_back(to_bigint(deltas[s]));
    if (in_concentration_window(st.scaled_deltas.back(), n, k)) ++st.in_window;
    const double x = static_cast<double>(increasing[s]);
    sum += x;
    sum_sq += x * x;
  }
  st.fraction_in_window = static_cast<double>(st.in_window) / samples;
  st.mean_increasing = sum / samples;
  const double var = samples > 1 ? (sum_sq - sum * sum / samples) / (samples - 1) : 0.0;
  st.stderr_increasing = std::sqrt(std::max(var, 0.0) / samples);
  st.expected_increasing = static_cast<double>(total) / static_cast<double>(kf);
  return st;
}

}  // namespace permbal
