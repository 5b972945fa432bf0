#pragma once

#include "permbal/arith.hpp"
#include "permbal/constructions.hpp"
#include "permbal/permutation.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace permbal {

// ---------------------------------------------------------------------------
// Random numbers. Every randomized routine takes a 64-bit master seed; work
// item i draws from mt19937_64 seeded with splitmix64(splitmix64(seed) + i),
// so results do not depend on how work is spread over threads.

inline constexpr const char* kRngName = "mt19937_64/splitmix64";

std::uint64_t splitmix64(std::uint64_t x);
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);
// Uniform in [0, bound) by rejection; identical on every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);
Permutation random_permutation(int n, std::mt19937_64& rng);

// ---------------------------------------------------------------------------

struct SearchReport {
  int n = 0;
  int k = 0;
  BigInt best_delta;  // scaled by k!
  std::vector<Permutation> witnesses;
  std::optional<BigInt> count_balanced;
  std::string method;
  std::optional<std::uint64_t> seed;
  std::uint64_t nodes_visited = 0;
};

struct ExhaustiveOptions {
  bool use_symmetry = true;
  bool count_balanced = false;
  // Report every member of each minimizing orbit, not just the canonical one.
  bool expand_orbits = false;
  unsigned threads = 1;
  // Refuse sweeps over more than this many permutations.
  std::uint64_t budget = 40'000'000;
};

// Canonical representative: lexicographically least image under D4 (which
// already contains inverse as the transpose).
Permutation canonical_form(const Permutation& pi);
std::vector<Permutation> symmetry_orbit(const Permutation& pi);

// Exact minimum of the scaled distance over S_n. Throws Error(BudgetExceeded).
SearchReport exhaustive_min_delta(int n, int k, const ExhaustiveOptions& opts = {});

struct GreedyOptions {
  std::uint64_t budget = 20'000'000;  // profile evaluations over all restarts
  std::uint64_t stall_limit = 1'000;  // steps without a new best before a restart
  unsigned threads = 1;               // restarts are independent substreams
};

// Hill climbing on the squared deviation from a random start: each step takes
// the best transposition not recently used, restarting from a fresh random
// permutation when stuck. Stops once the scaled distance reaches zero.
SearchReport greedy_search(int n, int k, std::uint64_t seed, const GreedyOptions& opts = {});

// ---------------------------------------------------------------------------

// C(n+2, 4)^2
BigInt es_3142_closed_form(int n);
// C(n+2,4)^2 - C(n^2,4)/24 as a polynomial in n.
Polynomial es_3142_deviation_polynomial();

struct ProfilePolynomial {
  Pattern pattern;
  Polynomial count;      // #pattern as a polynomial in n
  Polynomial deviation;  // count - C(N,4)/24 with N the permutation order
};

struct EsInterpolation {
  EsSign sign = EsSign::Both;
  std::vector<int> nodes;
  std::vector<int> holdout;
  std::vector<ProfilePolynomial> polynomials;  // lexicographic pattern order
  Polynomial total;                            // sum of the count polynomials
  int delta_degree = 0;                        // degree of the largest deviation
  Rational delta_leading;                      // its leading |coefficient|
};

// Exact 4-profiles of ES(n) for every n in `nodes` (Lagrange interpolation)
// checked against direct counts at every n in `holdout`. Throws
// Error(ValidationMismatch) when a polynomial misses a held-out count.
EsInterpolation interpolate_es(EsSign sign, const std::vector<int>& nodes, const std::vector<int>& holdout);
// The two-sided family on n = 1..9, validated at 10, 11, 12.
EsInterpolation interpolate_es_pm();

// ---------------------------------------------------------------------------

struct ProfileStats {
  int n = 0;
  int k = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<BigInt> scaled_deltas;
  // Fraction of samples with delta / n^(k - 1/2) in (1/(100 k!), 2 k!).
  double fraction_in_window = 0;
  int in_window = 0;
  // Sample mean and standard error of #(1..k), the increasing pattern.
  double mean_increasing = 0;
  double stderr_increasing = 0;
  double expected_increasing = 0;
};

// The window test is done in exact integer arithmetic.
bool in_concentration_window(const BigInt& scaled_delta, int n, int k);
ProfileStats random_profile_stats(int n, int k, int samples, std::uint64_t seed, unsigned threads = 1);

}  // namespace permbal
