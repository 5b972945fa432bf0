#include "permbal/moments.hpp"

#include "permbal/algebra.hpp"
#include "permbal/error.hpp"
#include "permbal/lp.hpp"

#include <bit>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>

namespace permbal {

BivariatePoly BivariatePoly::constant(const Rational& c) { return monomial(c, 0, 0); }

BivariatePoly BivariatePoly::monomial(const Rational& c, int a, int b) {
  BivariatePoly p;
  p.add_term({a, b}, c);
  return p;
}

BivariatePoly BivariatePoly::in_x(const Polynomial& q) {
  BivariatePoly p;
  for (std::size_t i = 0; i < q.coefficients().size(); ++i) p.add_term({static_cast<int>(i), 0}, q.coefficients()[i]);
  return p;
}

BivariatePoly BivariatePoly::in_y(const Polynomial& q) {
  BivariatePoly p;
  for (std::size_t i = 0; i < q.coefficients().size(); ++i) p.add_term({0, static_cast<int>(i)}, q.coefficients()[i]);
  return p;
}

void BivariatePoly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto& slot = terms_[e];
  slot += c;
  if (slot == 0) terms_.erase(e);
}

int BivariatePoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

Rational BivariatePoly::coefficient(int a, int b) const {
  auto it = terms_.find({a, b});
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational BivariatePoly::operator()(const Rational& x, const Rational& y) const {
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < e.first; ++i) term *= x;
    for (int j = 0; j < e.second; ++j) term *= y;
    sum += term;
  }
  return sum;
}

BivariatePoly& BivariatePoly::operator+=(const BivariatePoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

BivariatePoly& BivariatePoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
  BivariatePoly out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
  }
  return out;
}

BivariatePoly BivariatePoly::pow(unsigned e) const {
  BivariatePoly result = constant(1), base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

BivariatePoly BivariatePoly::substitute(const BivariatePoly& x_sub, const BivariatePoly& y_sub) const {
  std::map<int, BivariatePoly> xp, yp;
  auto power = [](std::map<int, BivariatePoly>& cache, const BivariatePoly& base, int e) -> const BivariatePoly& {
    auto it = cache.find(e);
    if (it == cache.end()) it = cache.emplace(e, base.pow(static_cast<unsigned>(e))).first;
    return it->second;
  };
  BivariatePoly out;
  for (const auto& [e, c] : terms_) out += power(xp, x_sub, e.first) * power(yp, y_sub, e.second) * c;
  return out;
}

std::string BivariatePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << " + ";
    first = false;
    os << permbal::to_string(c);
    if (e.first > 0) os << "*x^" << e.first;
    if (e.second > 0) os << "*y^" << e.second;
  }
  return os.str();
}

Rational eval_poly(const BivariatePoly& p, const Permutation& pi) {
  Rational sum = 0;
  for (int i = 1; i <= pi.size(); ++i) sum += p(Rational(i), Rational(pi(i)));
  return sum;
}

BigInt power_sum(int n, int a) {
  BigInt sum = 0;
  for (int i = 1; i <= n; ++i) sum += pow(BigInt(i), static_cast<unsigned>(a));
  return sum;
}

// ---------------------------------------------------------------------------

BigInt marked_coefficient(const Pattern& sigma, int d, int a, int b) {
  const int m = sigma.size();
  if (d < 1 || d > m || m > 20) throw Error(ErrorCode::BadIndexSet, "mark outside the pattern");
  const int vd = sigma(d);
  BigInt sum = 0;
  for (std::uint32_t t = 0; t < (1u << m); ++t) {
    if (t >> (d - 1) & 1u) continue;
    int left = 0, below = 0;
    for (int j = 1; j <= m; ++j) {
      if (t >> (j - 1) & 1u) continue;
      if (j <= d) ++left;
      if (sigma(j) <= vd) ++below;
    }
    const BigInt term = pow(BigInt(left), static_cast<unsigned>(a)) * pow(BigInt(below), static_cast<unsigned>(b));
    if (std::popcount(t) % 2 == 0) sum += term;
    else sum -= term;
  }
  return sum;
}

namespace {

// c(sigma, d; a, b) when L(d) | D(d) covers sigma, grouped by how the deleted
// set meets L & D minus d (size r-1), L only (p-r) and D only (q-r).
BigInt covering_coefficient(int p, int q, int r, int a, int b) {
  BigInt sum = 0;
  for (int t1 = 0; t1 <= r - 1; ++t1) {
    for (int t2 = 0; t2 <= p - r; ++t2) {
      for (int t3 = 0; t3 <= q - r; ++t3) {
        BigInt term = binomial(r - 1, static_cast<unsigned>(t1)) * binomial(p - r, static_cast<unsigned>(t2)) *
                      binomial(q - r, static_cast<unsigned>(t3)) *
                      pow(BigInt(p - t1 - t2), static_cast<unsigned>(a)) *
                      pow(BigInt(q - t1 - t3), static_cast<unsigned>(b));
        if ((t1 + t2 + t3) % 2 == 0) sum += term;
        else sum -= term;
      }
    }
  }
  return sum;
}

}  // namespace

MomentEngine::MomentEngine(const Profile& pk) : n_(pk.source_order()), k_(pk.order()) {
  for (int m = 1; m <= k_; ++m) {
    Profile pm = pk;
    if (m < k_) {
      try {
        pm = downward_induce(pk, m);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::NonIntegralResult) throw Error(ErrorCode::InconsistentProfile, e.what());
        throw;
      }
    }
    for (const auto& [rank, count] : pm.nonzero()) {
      const auto sigma = lex_unrank(m, rank);
      for (int d = 1; d <= m; ++d) {
        const int q = sigma(d);
        int r = 0;
        for (int j = 1; j <= d; ++j) r += sigma(j) <= q;
        if (d + q - r == m) weight_[{d, q, r}] += count;
      }
    }
  }
}

BigInt MomentEngine::moment(int a, int b) const {
  if (a < 0 || b < 0) throw Error(ErrorCode::KOutOfRange, "exponents must be non-negative");
  if (a == 0 || b == 0) return power_sum(n_, a + b);
  if (a + b >= k_) {
    throw Error(ErrorCode::DegreeBudgetExceeded, "x^" + std::to_string(a) + " y^" + std::to_string(b) +
                                                     " needs a profile of order > " + std::to_string(a + b));
  }
  BigInt sum = 0;
  for (const auto& [key, w] : weight_) {
    const auto [p, q, r] = key;
    if (p + q - r > a + b + 1) continue;  // more points than the tuple has entries
    sum += w * covering_coefficient(p, q, r, a, b);
  }
  return sum;
}

Rational MomentEngine::evaluate(const BivariatePoly& p) const {
  Rational sum = 0;
  for (const auto& [e, c] : p.terms()) sum += c * Rational(moment(e.first, e.second));
  return sum;
}

BigInt moment_from_profile(const Profile& pk, int a, int b) { return MomentEngine(pk).moment(a, b); }

MomentTable moment_table(const Profile& pk) {
  MomentEngine engine(pk);
  MomentTable t;
  t.n = engine.n();
  t.k = engine.k();
  for (int s = 0; s < t.k; ++s) {
    for (int a = 0; a <= s; ++a) t.entries[{a, s - a}] = engine.moment(a, s - a);
  }
  return t;
}

// ---------------------------------------------------------------------------

UvTables uv_tables(const Permutation& pi) {
  const int n = pi.size();
  UvTables t;
  t.n = n;
  std::vector<std::vector<int>> count(static_cast<std::size_t>(n) + 1, std::vector<int>(static_cast<std::size_t>(n) + 1, 0));
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) count[x][y] = count[x - 1][y] + (pi(x) <= y ? 1 : 0);
  }
  t.u.assign(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  t.v = t.u;
  const Rational nn(BigInt(n) * n);
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      t.u[x - 1][y - 1] = Rational(count[x][y], n);
      t.v[x - 1][y - 1] = Rational(BigInt(x) * y) / nn;
    }
  }
  return t;
}

ExperimentProbabilities experiment_probabilities(const Permutation& pi) {
  const auto t = uv_tables(pi);
  Rational uu = 0, uv = 0;
  for (int x = 0; x < t.n; ++x) {
    for (int y = 0; y < t.n; ++y) {
      uu += t.u[x][y] * t.u[x][y];
      uv += t.u[x][y] * t.v[x][y];
    }
  }
  const Rational nn(BigInt(t.n) * t.n);
  return {uu / nn, uv / nn};
}

Rational v_norm_sq(int n) {
  if (n < 1) throw Error(ErrorCode::KOutOfRange, "n must be positive");
  Rational sum = 0;
  const Rational nn(BigInt(n) * n);
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      const Rational v = Rational(BigInt(x) * y) / nn;
      sum += v * v;
    }
  }
  return sum / nn;
}

Rational v_norm_sq_closed_form(int n) {
  if (n < 1) throw Error(ErrorCode::KOutOfRange, "n must be positive");
  const Rational m(1, n);
  return Rational(1, 9) + m / 3 + Rational(13, 36) * m * m + m * m * m / 6 + m * m * m * m / 36;
}

// ---------------------------------------------------------------------------

const char* to_string(IndicatorMethod m) { return m == IndicatorMethod::Amplified ? "amplified" : "direct"; }

int amplification_exponent(int n) {
  if (n < 1) throw Error(ErrorCode::KOutOfRange, "n must be positive");
  BigInt three = 1, two = 1;
  int p = 0;
  while (three < 2 * n * two) {
    three *= 3;
    two *= 2;
    ++p;
  }
  return p;
}

namespace {

// Grid coordinate centred and doubled: 2x - n - 1, an integer in [-(n-1), n-1].
BivariatePoly centred(int n, bool is_x) {
  const BivariatePoly v = is_x ? BivariatePoly::x() : BivariatePoly::y();
  return v * Rational(2) + BivariatePoly::constant(-(n + 1));
}

}  // namespace

std::optional<Polynomial> univariate_indicator(int n, int t, int max_degree) {
  if (t < 1 || t > n) throw Error(ErrorCode::KOutOfRange, "t must lie in 1..n");
  const Rational third(1, 3), two_thirds(2, 3);
  for (int deg = 0; deg <= max_degree; ++deg) {
    // Rows over coefficients of (2x - n - 1)^j, j = 0..deg.
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    std::vector<std::size_t> seed;
    for (int x = 1; x <= n; ++x) {
      std::vector<Rational> row(static_cast<std::size_t>(deg) + 1);
      BigInt c = 2 * x - n - 1, power = 1;
      for (int j = 0; j <= deg; ++j, power *= c) row[j] = Rational(power);
      std::vector<Rational> neg(row.size());
      for (std::size_t j = 0; j < row.size(); ++j) neg[j] = -row[j];
      if (x == t) {
        // Pinned at 2/3 so that (f + 1/3) is exactly 1 at t.
        seed.push_back(a.size());
        a.push_back(row);
        b.push_back(two_thirds);
        seed.push_back(a.size());
        a.push_back(neg);
        b.push_back(-two_thirds);
      } else {
        a.push_back(row);
        b.push_back(third);
        a.push_back(neg);
        b.push_back(third);
      }
    }
    auto z = find_feasible_point_lazy(a, b, seed);
    if (!z) continue;
    Polynomial f;
    const Polynomial shift = Polynomial::x() * Rational(2) + Polynomial::constant(-(n + 1));
    Polynomial power = Polynomial::constant(1);
    for (int j = 0; j <= deg; ++j) {
      f += power * (*z)[j];
      power = power * shift;
    }
    return f;
  }
  return std::nullopt;
}

bool satisfies_indicator_contract(const BivariatePoly& p, int n, int a, int b) {
  const Rational cap(1, 2 * n);
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      const Rational v = p(Rational(x), Rational(y));
      if (x == a && y == b) {
        if (v < 1) return false;
      } else if (v < 0 || v > cap) {
        return false;
      }
    }
  }
  return true;
}

namespace {

std::optional<BivariatePoly> direct_indicator(int n, int a, int b, int k) {
  std::vector<std::pair<int, int>> exps;
  for (int s = 0; s < k; ++s) {
    for (int i = 0; i <= s; ++i) exps.emplace_back(i, s - i);
  }
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<std::size_t> seed;
  const Rational cap(1, 2 * n);
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      const BigInt cx = 2 * x - n - 1, cy = 2 * y - n - 1;
      std::vector<Rational> row;
      for (const auto& [i, j] : exps) row.emplace_back(pow(cx, static_cast<unsigned>(i)) * pow(cy, static_cast<unsigned>(j)));
      std::vector<Rational> neg(row.size());
      for (std::size_t j = 0; j < row.size(); ++j) neg[j] = -row[j];
      if (x == a && y == b) {
        seed.push_back(rows.size());
        rows.push_back(neg);
        rhs.push_back(-1);
      } else {
        rows.push_back(row);
        rhs.push_back(cap);
        rows.push_back(neg);
        rhs.push_back(0);
      }
    }
  }
  auto z = find_feasible_point_lazy(rows, rhs, seed);
  if (!z) return std::nullopt;
  BivariatePoly centred_poly;
  for (std::size_t t = 0; t < exps.size(); ++t) {
    centred_poly += BivariatePoly::monomial((*z)[t], exps[t].first, exps[t].second);
  }
  return centred_poly.substitute(centred(n, true), centred(n, false));
}

std::optional<BivariatePoly> amplified_indicator(int n, int a, int b, int k) {
  const int power = amplification_exponent(n);
  const int budget = (k - 1) / power;  // degree of f_a plus degree of f_b
  if (budget < 0) return std::nullopt;
  auto fa = univariate_indicator(n, a, budget);
  if (!fa) return std::nullopt;
  auto fb = univariate_indicator(n, b, budget - std::max(fa->degree(), 0));
  if (!fb) return std::nullopt;
  const BivariatePoly base = (BivariatePoly::in_x(*fa) + BivariatePoly::constant(Rational(1, 3))) *
                             (BivariatePoly::in_y(*fb) + BivariatePoly::constant(Rational(1, 3)));
  return base.pow(static_cast<unsigned>(power));
}

// The affine map of the grid carrying q to p under some element of D4.
std::optional<std::pair<BivariatePoly, BivariatePoly>> grid_map(int n, GridPoint q, GridPoint p) {
  for (D4 h : kAllD4) {
    if (apply(h, q, n) != p) continue;
    if (n == 1) return std::make_pair(BivariatePoly::x(), BivariatePoly::y());
    const GridPoint o = apply(h, {1, 1}, n), ex = apply(h, {2, 1}, n), ey = apply(h, {1, 2}, n);
    // h(x, y) = o + (x - 1)(ex - o) + (y - 1)(ey - o)
    auto coord = [&](int o_c, int ex_c, int ey_c) {
      return BivariatePoly::constant(o_c - (ex_c - o_c) - (ey_c - o_c)) + BivariatePoly::x() * Rational(ex_c - o_c) +
             BivariatePoly::y() * Rational(ey_c - o_c);
    };
    return std::make_pair(coord(o.x, ex.x, ey.x), coord(o.y, ex.y, ey.y));
  }
  return std::nullopt;
}

}  // namespace

Indicator build_indicator(int n, int a, int b, int k, IndicatorMethod method) {
  if (n < 1 || a < 1 || a > n || b < 1 || b > n) throw Error(ErrorCode::KOutOfRange, "point outside the grid");
  if (k < 1) throw Error(ErrorCode::KOutOfRange, "k must be positive");
  auto poly = method == IndicatorMethod::Direct ? direct_indicator(n, a, b, k) : amplified_indicator(n, a, b, k);
  if (!poly) {
    throw Error(ErrorCode::Infeasible, "no indicator of degree < " + std::to_string(k) + " for (" + std::to_string(a) +
                                           "," + std::to_string(b) + ") on the " + std::to_string(n) + "-grid");
  }
  if (!satisfies_indicator_contract(*poly, n, a, b) || poly->total_degree() >= k) {
    throw Error(ErrorCode::VerificationFailed, "indicator violates its contract");
  }
  return {n, a, b, k, method, std::move(*poly)};
}

const IndicatorFamily& indicator_family(int n, int k, IndicatorMethod method) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, IndicatorFamily> cache;
  std::lock_guard lock(mu);
  const auto key = std::make_tuple(n, k, static_cast<int>(method));
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  IndicatorFamily fam;
  fam.n = n;
  fam.k = k;
  fam.method = method;
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      if (fam.by_point.count({x, y})) continue;
      const GridPoint rep{x, y};
      std::optional<Indicator> base;
      try {
        base = build_indicator(n, x, y, k, method);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Infeasible) throw;
      }
      for (D4 g : kAllD4) {
        const GridPoint q = apply(g, rep, n);
        if (fam.by_point.count({q.x, q.y})) continue;
        if (!base) {
          fam.by_point[{q.x, q.y}] = std::nullopt;
          continue;
        }
        const auto h = grid_map(n, q, rep);
        Indicator moved = *base;
        moved.a = q.x;
        moved.b = q.y;
        moved.poly = base->poly.substitute(h->first, h->second);
        if (!satisfies_indicator_contract(moved.poly, n, q.x, q.y)) {
          throw Error(ErrorCode::VerificationFailed, "moved indicator violates its contract");
        }
        fam.by_point[{q.x, q.y}] = std::move(moved);
      }
    }
  }
  return cache.emplace(key, std::move(fam)).first->second;
}

Recovery recover_points(const Profile& pk, IndicatorMethod method) {
  const int n = pk.source_order(), k = pk.order();
  const MomentEngine engine(pk);
  const auto& fam = indicator_family(n, k, method);
  Recovery rec;
  rec.n = n;
  rec.k = k;
  rec.method = method;
  const Rational present_at(3, 4), absent_at(1, 2);
  for (const auto& [pt, ind] : fam.by_point) {
    const GridPoint g{pt.first, pt.second};
    if (!ind) {
      rec.infeasible.push_back(g);
      continue;
    }
    rec.certified_region.push_back(g);
    const Rational value = engine.evaluate(ind->poly);
    rec.values[pt] = value;
    if (value >= present_at) rec.present.push_back(g);
    else if (value <= absent_at) rec.absent.push_back(g);
    else {
      throw Error(ErrorCode::AmbiguousValue, "indicator at (" + std::to_string(g.x) + "," + std::to_string(g.y) +
                                                 ") evaluates to " + permbal::to_string(value));
    }
  }
  return rec;
}

}  // namespace permbal
