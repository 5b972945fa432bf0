#include "permbal/constructions.hpp"

#include "permbal/error.hpp"
#include "permbal/profile.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace permbal {

namespace detail {
extern const char* const kWitnessTableText;
}

Permutation two_balanced(int n) {
  if (n < 1 || (n % 4 != 0 && n % 4 != 1)) {
    throw Error(ErrorCode::Inadmissible, "2-balanced permutations need n = 0 or 1 mod 4, got " + std::to_string(n));
  }
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  const std::int64_t target = static_cast<std::int64_t>(n) * (n - 1) / 4;
  std::int64_t inversions = 0;
  while (inversions < target) {
    for (int i = 0; i + 1 < n && inversions < target; ++i) {
      if (v[i] < v[i + 1]) {
        std::swap(v[i], v[i + 1]);
        ++inversions;
      }
    }
  }
  return Permutation::from_one_line(v);
}

Permutation rotate_close(const Permutation& sigma, Parity parity) {
  const int m = sigma.size();
  const int n = parity == Parity::Even ? 4 * m : 4 * m + 1;
  std::vector<GridPoint> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= m; ++i) {
    GridPoint p{m + i, sigma(i)};
    for (int turn = 0; turn < 4; ++turn) {
      pts.push_back(p);
      p = apply(D4::Rot90, p, n);
    }
  }
  if (parity == Parity::Odd) pts.push_back({2 * m + 1, 2 * m + 1});
  return from_grid_points(pts);
}

PointSet base_segments(int ell) {
  if (ell < 1) throw Error(ErrorCode::KOutOfRange, "segment length must be positive");
  PointSet ps;
  for (int s = 0; s < 3; ++s) {
    for (int j = 1; j <= ell; ++j) ps.add(s * ell + j, s * ell + ell + 1 - j);
  }
  return ps;
}

// ---------------------------------------------------------------------------

int recipe_minimum_t(int residue) {
  switch (residue) {
    case 20:
    case 28:
    case 0: return 2;
    case 29:
    case 1:
    case 9: return 4;
  }
  throw Error(ErrorCode::ResidueUnknown, "no recipe for residue " + std::to_string(residue) + " mod 36");
}

SigmaRecipe sigma_recipe_unchecked(int residue, int t) {
  SigmaRecipe rec;
  rec.residue = residue;
  rec.t = t;
  rec.ell = 3 * t + 1;
  const int ell = rec.ell, r = 4 * t + 2;
  rec.points = base_segments(ell);
  auto& ps = rec.points;
  switch (residue) {
    case 20:
    case 28:
    case 0:
      rec.parity = Parity::Even;
      ps.add(EpsCoord(r + 2, 1), EpsCoord(r + ell, 1));
      ps.add(EpsCoord(r + ell, 1), EpsCoord(r, -1));
      if (residue == 20) break;
      ps.add(EpsCoord(0, 1), EpsCoord(ell, 1));
      ps.add(EpsCoord(1, 1), EpsCoord(ell, -1));
      if (residue == 28) break;
      ps.add(EpsCoord(ell + 2, 1), EpsCoord(0, 1));
      ps.add(EpsCoord(ell + 1, 1), EpsCoord(5, 1));
      break;
    case 29:
    case 1:
    case 9:
      rec.parity = Parity::Odd;
      ps.add(EpsCoord(-5, 1), EpsCoord(1, 1));
      ps.add(EpsCoord(-3, 1), EpsCoord(t - 2, 1));
      ps.add(EpsCoord(-2, 1), EpsCoord(7 * t + 4, 1));
      ps.add(EpsCoord(0, 1), EpsCoord(7 * t + 3, 1));
      if (residue == 29) break;
      ps.add(EpsCoord(-4, 1), EpsCoord(3 * t - 1, 1));
      ps.add(EpsCoord(2 * t - 2, 1), EpsCoord(5 * t + 1, 1));
      if (residue == 1) break;
      ps.add(EpsCoord(-1, 1), EpsCoord(3 * t - 2, 1));
      ps.add(EpsCoord(4 * t + 1, 1), EpsCoord(t - 1, 1));
      break;
    default:
      throw Error(ErrorCode::ResidueUnknown, "no recipe for residue " + std::to_string(residue) + " mod 36");
  }
  return rec;
}

SigmaRecipe sigma_recipe(int residue, int t) {
  const int t_min = recipe_minimum_t(residue);
  if (t < t_min) {
    throw Error(ErrorCode::TBelowMinimum, "residue " + std::to_string(residue) + " needs t >= " +
                                              std::to_string(t_min) + ", got " + std::to_string(t));
  }
  return sigma_recipe_unchecked(residue, t);
}

Permutation sigma_for_residue(int residue, int t) { return from_points(sigma_recipe(residue, t).points); }

BigInt sigma_discrepancy(const Permutation& sigma, Parity parity) {
  const int m = sigma.size();
  BigInt c12 = 0, c123 = 0, c321 = 0;
  if (m >= 2) c12 = to_bigint(dense_profile(sigma.values(), 2)[0]);
  if (m >= 3) {
    auto p3 = dense_profile(sigma.values(), 3);
    c123 = to_bigint(p3[0]);
    c321 = to_bigint(p3[5]);
  }
  const BigInt mm = m;
  BigInt d = 3 * c123 + 3 * c321 - binomial(m, 3) - mm * mm * mm;
  if (parity == Parity::Even) return d + 3 * mm * c12;
  return d + (3 * mm + 3) * c12 - binomial(m, 2);
}

ResiduePlan residue_plan(std::int64_t n) {
  const int residue = static_cast<int>(n % 36);
  std::int64_t offset = 0;
  switch (residue) {
    case 20: offset = 20; break;
    case 28: offset = 28; break;
    case 0: offset = 36; break;
    case 29: offset = 29; break;
    case 1: offset = 37; break;
    case 9: offset = 45; break;
    default:
      throw Error(ErrorCode::Inadmissible, "n = " + std::to_string(n) + " is " + std::to_string(residue) +
                                               " mod 36; 3-balanced orders are 0, 1, 9, 20, 28, 29 mod 36");
  }
  return {residue, static_cast<int>((n - offset) / 36)};
}

// ---------------------------------------------------------------------------

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

bool three_balanced_counts(const Permutation& pi) {
  const int n = pi.size();
  if (n < 3) return false;
  const auto counts = dense_profile(pi.values(), 3);
  const __int128 total = static_cast<__int128>(n) * (n - 1) * (n - 2) / 6;
  if (total % 6 != 0) return false;
  return std::all_of(counts.begin(), counts.end(), [&](__int128 c) { return c == total / 6; });
}

}  // namespace

WitnessTable WitnessTable::parse(std::string_view text) {
  WitnessTable store;
  std::string body;
  std::string declared;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string tag = "# fnv1a64 ";
      if (line.rfind(tag, 0) == 0) declared = line.substr(tag.size());
      continue;
    }
    const auto space = line.find(' ');
    if (space == std::string::npos) {
      throw Error(ErrorCode::ParseError, "table line " + std::to_string(line_no) + ": expected '<n> <perm>'");
    }
    int n = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + space, n);
    if (ec != std::errc() || ptr != line.data() + space) {
      throw Error(ErrorCode::ParseError, "table line " + std::to_string(line_no) + ": bad order");
    }
    auto pi = parse_permutation(std::string_view(line).substr(space + 1));
    if (pi.size() != n) {
      throw Error(ErrorCode::ParseError, "table line " + std::to_string(line_no) + ": order mismatch");
    }
    store.records_.emplace(n, std::move(pi));
    body += line;
    body += '\n';
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(body)));
  store.checksum_ = hex;
  if (declared.empty() || declared != store.checksum_) {
    throw Error(ErrorCode::ParseError, "table checksum mismatch: declared '" + declared + "', computed " + hex);
  }
  for (const auto& [n, pi] : store.records_) {
    if (!three_balanced_counts(pi)) {
      throw Error(ErrorCode::VerificationFailed, "table entry for n = " + std::to_string(n) + " is not 3-balanced");
    }
  }
  return store;
}

const WitnessTable& WitnessTable::builtin() {
  static const WitnessTable store = parse(detail::kWitnessTableText);
  return store;
}

const Permutation* WitnessTable::find(int n) const {
  auto it = records_.find(n);
  return it == records_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------

Permutation three_balanced_from_recipe(int residue, int t) {
  auto rec = sigma_recipe(residue, t);
  auto pi = rotate_close(from_points(rec.points), rec.parity);
  if (!three_balanced_counts(pi)) {
    throw Error(ErrorCode::VerificationFailed, "recipe (residue " + std::to_string(residue) + ", t = " +
                                                   std::to_string(t) + ") is not 3-balanced");
  }
  return pi;
}

ThreeBalancedResult three_balanced_detailed(std::int64_t n) {
  if (n < 1 || n == 2 || n > 1000000) throw Error(ErrorCode::Inadmissible, "n = " + std::to_string(n) + " out of range");
  ThreeBalancedResult out;
  if (n == 1) {
    out.pi = Permutation::identity(1);
    out.source = ThreeBalancedSource::Trivial;
    out.residue = 1;
    return out;
  }
  const auto plan = residue_plan(n);
  out.residue = plan.residue;
  out.t = plan.t;
  if (const Permutation* stored = WitnessTable::builtin().find(static_cast<int>(n))) {
    out.pi = *stored;
    out.source = ThreeBalancedSource::Table;
    return out;
  }
  if (plan.t < recipe_minimum_t(plan.residue)) {
    throw Error(ErrorCode::ConstructionGap, "neither the table nor a recipe covers n = " + std::to_string(n));
  }
  out.pi = three_balanced_from_recipe(plan.residue, plan.t);
  out.source = ThreeBalancedSource::Recipe;
  return out;
}

Permutation three_balanced(std::int64_t n) { return three_balanced_detailed(n).pi; }

NearlyBalanced nearly_balanced_sigma(int ell) {
  if (ell < 5 || ell % 3 == 1) {
    throw Error(ErrorCode::Inadmissible, "nearly balanced sigma needs ell = 0 or 2 mod 3, ell >= 5");
  }
  const int r = 4 * ell / 3 + 1;
  PointSet ps = base_segments(ell);
  ps.add(EpsCoord(r + 2, 1), EpsCoord(r + ell, 1));
  ps.add(EpsCoord(r + ell, 1), EpsCoord(r, -1));
  NearlyBalanced out;
  out.sigma = from_points(ps);
  out.r = r;
  out.discrepancy = sigma_discrepancy(out.sigma, Parity::Even);
  return out;
}

// ---------------------------------------------------------------------------

PointSet es_points(int n, int m, EsSign sign) {
  if (n < 1 || m < 1) throw Error(ErrorCode::KOutOfRange, "grid dimensions must be positive");
  PointSet ps;
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= m; ++y) {
      // A positive turn sends (x, y) to (x - e y, y + e x).
      if (sign != EsSign::Minus) ps.add(EpsCoord(x, -y), EpsCoord(y, x));
      if (sign != EsSign::Plus) ps.add(EpsCoord(x, y), EpsCoord(y, -x));
    }
  }
  return ps;
}

Permutation es(int n, int m, EsSign sign) { return from_points(es_points(n, m, sign)); }

}  // namespace permbal
