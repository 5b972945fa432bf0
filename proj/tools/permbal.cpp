// permbal: command-line front end for the pattern-profile library.

#include "permbal/algebra.hpp"
#include "permbal/analysis.hpp"
#include "permbal/constructions.hpp"
#include "permbal/error.hpp"
#include "permbal/moments.hpp"
#include "permbal/profile.hpp"
#include "permbal/registry.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace permbal;
using Json = nlohmann::ordered_json;

namespace {

struct Globals {
  std::string format = "json";
  std::string registry;
  bool no_registry = false;
  unsigned threads = 1;
};

std::string s(const BigInt& v) { return to_string(v); }
std::string s(const Rational& v) { return to_string(v); }

std::string point_key(int a, int b) { return std::to_string(a) + "," + std::to_string(b); }

Json profile_json(const Profile& p) {
  Json counts = Json::object();
  if (p.order() <= 8) {
    const auto dense = p.dense();
    for (std::size_t r = 0; r < dense.size(); ++r) counts[pattern_key(lex_unrank(p.order(), r))] = s(dense[r]);
  } else {
    for (const auto& [rank, c] : p.nonzero()) counts[pattern_key(lex_unrank(p.order(), rank))] = s(c);
  }
  return counts;
}

Json points_json(const std::vector<GridPoint>& pts) {
  Json out = Json::array();
  for (const auto& g : pts) out.push_back({g.x, g.y});
  return out;
}

// Recomputes the scaled distance with a second counting method where that is
// affordable, so every emitted permutation is checked independently.
BigInt verified_delta(const Permutation& pi, int k) {
  const BigInt fast = delta_scaled(pi, k);
  const int n = pi.size();
  const bool naive_ok = (k <= 2 && n <= 3000) || (k == 3 && n <= 150) || (k == 4 && n <= 40);
  if (naive_ok && k <= n) {
    const BigInt naive = delta_scaled(profile(pi, k, ProfileMethod::Naive));
    if (naive != fast) throw Error(ErrorCode::VerificationFailed, "fast and naive profiles disagree");
  }
  return fast;
}

void flatten(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
  } else if (j.is_string()) {
    os << prefix << ": " << j.get<std::string>() << "\n";
  } else {
    os << prefix << ": " << j.dump() << "\n";
  }
}

void emit(const Globals& g, const Json& j) {
  if (g.format == "text") flatten(j, "", std::cout);
  else std::cout << j.dump(2) << "\n";
}

void record(const Globals& g, const std::vector<WitnessRecord>& records) {
  if (g.no_registry || records.empty()) return;
  append_witnesses(g.registry.empty() ? default_registry_path() : g.registry, records);
}

Permutation read_perm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_permutation(buf.str());
}

// ---------------------------------------------------------------------------

struct PermK {
  std::string perm;
  int k = 3;
};

void cmd_profile(const Globals& g, const PermK& o, const std::string& method) {
  const auto pi = parse_permutation(o.perm);
  const auto m = method == "naive" ? ProfileMethod::Naive : ProfileMethod::Fast;
  const auto p = profile(pi, o.k, m);
  Json j;
  j["n"] = pi.size();
  j["k"] = o.k;
  j["method"] = method;
  j["total"] = s(p.total());
  j["profile"] = profile_json(p);
  emit(g, j);
}

void cmd_check(const Globals& g, const PermK& o) {
  const auto pi = parse_permutation(o.perm);
  const BigInt d = verified_delta(pi, o.k);
  const auto adm = admissible(pi.size(), o.k);
  Json j;
  j["perm"] = format_one_line(pi);
  j["n"] = pi.size();
  j["k"] = o.k;
  j["balanced"] = d == 0;
  j["scaled_delta"] = s(d);
  j["delta"] = s(Rational(d) / Rational(factorial(static_cast<unsigned>(o.k))));
  j["admissible"] = adm.admissible;
  emit(g, j);
}

struct ConstructOpts {
  std::string kind;
  int n = 0;
  int m = 0;
  int t = -1;
};

void cmd_construct(const Globals& g, const ConstructOpts& o) {
  Permutation pi;
  int k = 3;
  Json info;
  if (o.kind == "2bal") {
    pi = two_balanced(o.n);
    k = 2;
  } else if (o.kind == "3bal") {
    if (o.t >= 0) {
      pi = three_balanced_from_recipe(o.n % 36, o.t);
      if (pi.size() != o.n) {
        throw Error(ErrorCode::KOutOfRange, "recipe for residue " + std::to_string(o.n % 36) + " with t = " +
                                                std::to_string(o.t) + " has order " + std::to_string(pi.size()));
      }
      info["source"] = "recipe";
      info["residue"] = o.n % 36;
      info["t"] = o.t;
    } else {
      const auto r = three_balanced_detailed(o.n);
      pi = r.pi;
      info["source"] = r.source == ThreeBalancedSource::Table    ? "table"
                       : r.source == ThreeBalancedSource::Recipe ? "recipe"
                                                                 : "trivial";
      info["residue"] = r.residue;
      if (r.source == ThreeBalancedSource::Recipe) info["t"] = r.t;
    }
  } else if (o.kind == "near3bal") {
    if (o.n % 4 != 0 || (o.n / 4 - 2) % 3 != 0 || o.n / 4 < 2) {
      throw Error(ErrorCode::Inadmissible, "near3bal needs n = 4(3l+2)");
    }
    const int ell = (o.n / 4 - 2) / 3;
    const auto nb = nearly_balanced_sigma(ell);
    pi = rotate_close(nb.sigma, Parity::Even);
    info["l"] = ell;
    info["r"] = nb.r;
    info["sigma_discrepancy"] = s(nb.discrepancy);
  } else if (o.kind == "es+" || o.kind == "es-" || o.kind == "es2") {
    const auto sign = o.kind == "es+" ? EsSign::Plus : o.kind == "es-" ? EsSign::Minus : EsSign::Both;
    const int m = o.m > 0 ? o.m : o.n;
    pi = es(o.n, m, sign);
    k = 4;
    info["grid"] = {o.n, m};
    if (sign == EsSign::Plus && m == o.n && o.n >= 2) {
      const BigInt c = profile(pi, 4).count(Permutation::from_one_line({3, 1, 4, 2}));
      if (c != es_3142_closed_form(o.n)) throw Error(ErrorCode::VerificationFailed, "#3142 misses its closed form");
      info["count_3142"] = s(c);
    }
  } else {
    throw Error(ErrorCode::ParseError, "unknown kind " + o.kind);
  }
  const BigInt d = pi.size() >= k ? verified_delta(pi, k) : BigInt(0);
  if ((o.kind == "2bal" || o.kind == "3bal") && d != 0) {
    throw Error(ErrorCode::VerificationFailed, "constructed permutation is not balanced");
  }
  Json verification;
  verification["n"] = pi.size();
  verification["k"] = k;
  verification["scaled_delta"] = s(d);
  verification["balanced"] = d == 0;
  for (auto it = info.begin(); it != info.end(); ++it) verification[it.key()] = it.value();
  record(g, {make_witness(pi, k, "construct:" + o.kind, std::nullopt)});
  if (g.format == "text") {
    std::cout << format_one_line(pi) << "\n" << verification.dump(2) << "\n";
    return;
  }
  Json j;
  j["kind"] = o.kind;
  j["perm"] = format_one_line(pi);
  j["verification"] = verification;
  emit(g, j);
}

Json report_json(const SearchReport& r) {
  Json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["method"] = r.method;
  if (r.seed) {
    j["seed"] = std::to_string(*r.seed);
    j["rng"] = kRngName;
  }
  j["best_scaled_delta"] = s(r.best_delta);
  Json w = Json::array();
  for (const auto& p : r.witnesses) w.push_back(format_one_line(p));
  j["witnesses"] = w;
  if (r.count_balanced) j["count_balanced"] = s(*r.count_balanced);
  j["nodes_visited"] = std::to_string(r.nodes_visited);
  return j;
}

void check_witnesses(const SearchReport& r) {
  for (const auto& w : r.witnesses) {
    if (verified_delta(w, r.k) != r.best_delta) throw Error(ErrorCode::VerificationFailed, "witness does not reach the reported distance");
  }
}

std::vector<WitnessRecord> witness_records(const SearchReport& r) {
  std::vector<WitnessRecord> out;
  for (const auto& w : r.witnesses) out.push_back(make_witness(w, r.k, r.method, r.seed));
  return out;
}

struct SearchOpts {
  int n = 0, k = 3;
  std::uint64_t seed = 1;
  std::uint64_t budget = GreedyOptions{}.budget;
  std::uint64_t stall = GreedyOptions{}.stall_limit;
};

void cmd_search(const Globals& g, const SearchOpts& o) {
  GreedyOptions opts;
  opts.budget = o.budget;
  opts.stall_limit = o.stall;
  opts.threads = g.threads;
  const auto r = greedy_search(o.n, o.k, o.seed, opts);
  check_witnesses(r);
  record(g, witness_records(r));
  emit(g, report_json(r));
}

struct MindistOpts {
  int n = 0, k = 3;
  bool count = false, no_symmetry = false, all = false;
  std::uint64_t budget = ExhaustiveOptions{}.budget;
};

void cmd_mindist(const Globals& g, const MindistOpts& o) {
  ExhaustiveOptions opts;
  opts.use_symmetry = !o.no_symmetry;
  opts.count_balanced = o.count;
  opts.expand_orbits = o.all;
  opts.threads = g.threads;
  opts.budget = o.budget;
  const auto r = exhaustive_min_delta(o.n, o.k, opts);
  check_witnesses(r);
  record(g, witness_records(r));
  emit(g, report_json(r));
}

void cmd_espm(const Globals& g, bool interp, const std::string& sign_name, int n) {
  const auto sign = sign_name == "plus" ? EsSign::Plus : sign_name == "minus" ? EsSign::Minus : EsSign::Both;
  Json j;
  j["sign"] = sign_name;
  if (!interp) {
    if (n < 1) throw Error(ErrorCode::KOutOfRange, "espm needs --n or --interp");
    const auto pi = es(n, sign);
    j["n"] = n;
    j["order"] = pi.size();
    j["scaled_delta"] = pi.size() >= 4 ? s(verified_delta(pi, 4)) : "0";
    j["profile"] = pi.size() >= 4 ? profile_json(profile(pi, 4)) : Json::object();
    emit(g, j);
    return;
  }
  const auto fit = sign == EsSign::Both ? interpolate_es_pm()
                                        : interpolate_es(sign, {1, 2, 3, 4, 5, 6, 7, 8, 9}, {10, 11, 12});
  j["nodes"] = fit.nodes;
  j["holdout"] = fit.holdout;
  Json polys;
  for (const auto& pp : fit.polynomials) {
    polys[pattern_key(pp.pattern)] = {{"count", pp.count.to_string()}, {"deviation", pp.deviation.to_string()}};
  }
  j["polynomials"] = polys;
  j["total"] = fit.total.to_string();
  j["delta_degree"] = fit.delta_degree;
  j["delta_leading"] = s(fit.delta_leading);
  j["delta_leading_term"] = s(fit.delta_leading) + "*n^" + std::to_string(fit.delta_degree);
  emit(g, j);
}

void cmd_expand(const Globals& g, const std::string& a, const std::string& b, int samples, std::uint64_t seed) {
  const auto sigma = parse_pattern_key(a), tau = parse_pattern_key(b);
  const auto combo = expand_product(sigma, tau);
  // The identity is checked on random permutations before it is printed.
  for (int i = 0; i < samples; ++i) {
    auto rng = substream(seed, static_cast<std::uint64_t>(i));
    const int n = 1 + static_cast<int>(uniform_below(rng, 12));
    const auto pi = random_permutation(n, rng);
    const auto count = [&](const Pattern& p) { return p.size() <= n ? Rational(profile(pi, p.size()).count(p)) : Rational(0); };
    if (count(sigma) * count(tau) != combo.evaluate(pi)) {
      throw Error(ErrorCode::VerificationFailed, "expansion fails on " + format_one_line(pi));
    }
  }
  Json terms = Json::object();
  for (const auto& [rho, c] : combo.terms()) terms[pattern_key(rho)] = s(c);
  Json j;
  j["sigma"] = pattern_key(sigma);
  j["tau"] = pattern_key(tau);
  j["terms"] = terms;
  j["constant"] = s(combo.constant());
  j["uniform_polynomial"] = combo.uniform_polynomial().to_string();
  j["checked_on"] = samples;
  j["seed"] = std::to_string(seed);
  emit(g, j);
}

void cmd_moments(const Globals& g, const PermK& o) {
  const auto pi = parse_permutation(o.perm);
  const auto table = moment_table(profile(pi, o.k));
  Json m;
  for (const auto& [e, v] : table.entries) {
    if (Rational(v) != eval_poly(BivariatePoly::monomial(1, e.first, e.second), pi)) {
      throw Error(ErrorCode::VerificationFailed, "moment " + point_key(e.first, e.second) + " disagrees with direct evaluation");
    }
    m[point_key(e.first, e.second)] = s(v);
  }
  Json j;
  j["n"] = table.n;
  j["k"] = table.k;
  j["moments"] = m;
  emit(g, j);
}

void cmd_recover(const Globals& g, const std::string& file, int k, const std::string& method_name) {
  const auto pi = read_perm_file(file);
  const auto method = method_name == "amplified" ? IndicatorMethod::Amplified : IndicatorMethod::Direct;
  const auto rec = recover_points(profile(pi, k), method);
  for (const auto& p : rec.present) {
    if (pi(p.x) != p.y) throw Error(ErrorCode::VerificationFailed, "recovered a point the permutation lacks");
  }
  for (const auto& p : rec.absent) {
    if (pi(p.x) == p.y) throw Error(ErrorCode::VerificationFailed, "missed a point of the permutation");
  }
  Json values;
  for (const auto& [pt, v] : rec.values) values[point_key(pt.first, pt.second)] = s(v);
  Json j;
  j["n"] = rec.n;
  j["k"] = rec.k;
  j["method"] = to_string(rec.method);
  j["certified_region"] = points_json(rec.certified_region);
  j["present"] = points_json(rec.present);
  j["absent"] = points_json(rec.absent);
  j["infeasible"] = points_json(rec.infeasible);
  j["values"] = values;
  emit(g, j);
}

void cmd_stats(const Globals& g, int n, int k, int samples, std::uint64_t seed) {
  const auto st = random_profile_stats(n, k, samples, seed, g.threads);
  Json d = Json::array();
  for (const auto& v : st.scaled_deltas) d.push_back(s(v));
  Json j;
  j["n"] = st.n;
  j["k"] = st.k;
  j["samples"] = st.samples;
  j["seed"] = std::to_string(st.seed);
  j["rng"] = kRngName;
  j["in_window"] = st.in_window;
  j["fraction_in_window"] = st.fraction_in_window;
  j["mean_increasing"] = st.mean_increasing;
  j["stderr_increasing"] = st.stderr_increasing;
  j["expected_increasing"] = st.expected_increasing;
  j["scaled_deltas"] = d;
  emit(g, j);
}

void cmd_verify_identities(const Globals& g, int samples, std::uint64_t seed) {
  Json checks = Json::array();
  bool all_ok = true;
  auto add = [&](const std::string& name, int checked, bool ok) {
    checks.push_back({{"name", name}, {"checked", checked}, {"passed", ok}});
    all_ok = all_ok && ok;
  };

  int checked = 0;
  bool ok = true;
  for (int i = 0; i < samples; ++i) {
    auto rng = substream(seed, static_cast<std::uint64_t>(i));
    const int n = 4 + static_cast<int>(uniform_below(rng, 9));
    const auto pi = random_permutation(n, rng);
    const int k = 2 + static_cast<int>(uniform_below(rng, 3));
    const auto pk = profile(pi, k);
    for (int r = 1; r < k; ++r, ++checked) ok = ok && downward_induce(pk, r) == profile(pi, r);
  }
  add("downward induction", checked, ok);

  checked = 0;
  ok = true;
  for (int k = 2; k <= 6; ++k) {
    for (const auto& tau : all_permutations(k - 1)) {
      ok = ok && pattern_content_sum(k, tau) == BigInt(k) * k;
      ++checked;
    }
  }
  add("pattern content sum", checked, ok);

  checked = 0;
  ok = true;
  for (int i = 0; i < samples; ++i) {
    auto rng = substream(seed + 1, static_cast<std::uint64_t>(i));
    const auto pi = random_permutation(4 + static_cast<int>(uniform_below(rng, 20)), rng);
    const auto p = profile(pi, 4);
    for (D4 h : kAllD4) {
      const auto q = profile(act(h, pi), 4);
      for (const auto& tau : all_permutations(4)) ok = ok && q.count(act(h, tau)) == p.count(tau);
    }
    ++checked;
  }
  add("symmetry invariance", checked, ok);

  checked = 0;
  ok = true;
  for (int i = 0; i < samples; ++i) {
    auto rng = substream(seed + 2, static_cast<std::uint64_t>(i));
    const int n = 5 + static_cast<int>(uniform_below(rng, 20));
    const int k = 2 + static_cast<int>(uniform_below(rng, 3));
    ok = ok && check_delta_transfer(random_permutation(n, rng), k);
    ++checked;
  }
  add("distance transfer", checked, ok);

  const auto roots = verify_no_4_balanced().rational_roots();
  add("no 4-balanced roots", 1, roots == std::vector<Rational>{Rational(-5, 2), Rational(0), Rational(1)});

  checked = 0;
  ok = true;
  for (int k = 4; k <= 8; ++k, ++checked) {
    const auto c = verify_distance_coefficients(k);
    ok = ok && c.product_leading == c.expansion_leading && c.product_second != c.expansion_second &&
         c.product_leading == distance_product_leading_closed_form(k) &&
         c.product_second == distance_product_second_closed_form(k) &&
         c.expansion_second == distance_expansion_second_closed_form(k);
  }
  add("distance coefficients", checked, ok);

  Json j;
  j["seed"] = std::to_string(seed);
  j["samples"] = samples;
  j["checks"] = checks;
  j["all_passed"] = all_ok;
  emit(g, j);
  if (!all_ok) throw Error(ErrorCode::VerificationFailed, "an identity check failed");
}

int cmd_registry(const Globals& g) {
  const std::string path = g.registry.empty() ? default_registry_path() : g.registry;
  const auto scan = scan_registry(path);
  Json issues = Json::array();
  int code = 0;
  for (const auto& is : scan.issues) {
    std::cerr << path << ":" << is.line << ": " << is.message << "\n";
    issues.push_back({{"line", is.line}, {"code", to_string(is.code)}, {"message", is.message}});
    code = std::max(code, category(is.code) == ErrorCategory::Parse ? 2 : category(is.code) == ErrorCategory::Domain ? 3 : 4);
  }
  Json j;
  j["path"] = path;
  j["records"] = scan.records.size();
  j["issues"] = issues;
  emit(g, j);
  return code;
}

int exit_code(const Error& e) {
  switch (category(e.code())) {
    case ErrorCategory::Parse: return 2;
    case ErrorCategory::Domain: return 3;
    case ErrorCategory::Internal: return 4;
  }
  return 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pattern profiles, balanced permutations and profile recovery"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--registry", g.registry, "Witness registry path (default: $PERMBAL_REGISTRY or ./permbal_registry.jsonl)");
  app.add_flag("--no-registry", g.no_registry, "Do not append witnesses");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 256u));

  PermK pk;
  std::string profile_method = "fast";
  auto* profile_cmd = app.add_subcommand("profile", "k-profile of a permutation");
  profile_cmd->add_option("perm", pk.perm, "One-line permutation")->required();
  profile_cmd->add_option("--k", pk.k, "Pattern order")->required();
  profile_cmd->add_option("--method", profile_method)->check(CLI::IsMember({"fast", "naive"}));

  auto* check_cmd = app.add_subcommand("check", "Balance verdict and distance");
  check_cmd->add_option("perm", pk.perm, "One-line permutation")->required();
  check_cmd->add_option("--k", pk.k, "Pattern order")->required();

  ConstructOpts co;
  auto* construct_cmd = app.add_subcommand("construct", "Build a permutation from a construction");
  construct_cmd->add_option("--kind", co.kind)->required()->check(CLI::IsMember({"2bal", "3bal", "near3bal", "es+", "es-", "es2"}));
  construct_cmd->add_option("--n", co.n)->required();
  construct_cmd->add_option("--m", co.m, "Second grid side for the es kinds");
  construct_cmd->add_option("--t", co.t, "Force the residue recipe with this t");

  SearchOpts so;
  auto* search_cmd = app.add_subcommand("search", "Randomized local search for small distance");
  search_cmd->add_option("--n", so.n)->required();
  search_cmd->add_option("--k", so.k)->required();
  search_cmd->add_option("--seed", so.seed);
  search_cmd->add_option("--budget", so.budget, "Profile evaluations");
  search_cmd->add_option("--stall", so.stall, "Steps without improvement before a restart");

  MindistOpts mo;
  auto* mindist_cmd = app.add_subcommand("mindist", "Exhaustive minimum distance over S_n");
  mindist_cmd->add_option("--n", mo.n)->required();
  mindist_cmd->add_option("--k", mo.k)->required();
  mindist_cmd->add_flag("--count", mo.count, "Count balanced permutations");
  mindist_cmd->add_flag("--no-symmetry", mo.no_symmetry, "Sweep every permutation");
  mindist_cmd->add_flag("--all", mo.all, "List every minimizer, not one per symmetry class");
  mindist_cmd->add_option("--budget", mo.budget, "Largest sweep allowed");

  bool interp = false;
  std::string es_sign = "both";
  int es_n = 0;
  auto* espm_cmd = app.add_subcommand("espm", "Erdos-Szekeres profiles and their polynomials");
  espm_cmd->add_flag("--interp", interp, "Interpolate the 4-profile polynomials");
  espm_cmd->add_option("--sign", es_sign)->check(CLI::IsMember({"plus", "minus", "both"}));
  espm_cmd->add_option("--n", es_n);

  std::string ex_a, ex_b;
  int ex_samples = 20;
  std::uint64_t ex_seed = 1;
  auto* expand_cmd = app.add_subcommand("expand", "Product of two pattern counts as a combination");
  expand_cmd->add_option("sigma", ex_a)->required();
  expand_cmd->add_option("tau", ex_b)->required();
  expand_cmd->add_option("--samples", ex_samples, "Random permutations to check the identity on");
  expand_cmd->add_option("--seed", ex_seed);

  auto* moments_cmd = app.add_subcommand("moments", "Moments read off the k-profile");
  moments_cmd->add_option("perm", pk.perm, "One-line permutation")->required();
  moments_cmd->add_option("--k", pk.k, "Profile order")->required();

  std::string rec_file, rec_method = "direct";
  int rec_k = 0;
  auto* recover_cmd = app.add_subcommand("recover", "Recover points from the k-profile");
  recover_cmd->add_option("--perm", rec_file, "File holding the permutation")->required();
  recover_cmd->add_option("--k", rec_k)->required();
  recover_cmd->add_option("--method", rec_method)->check(CLI::IsMember({"direct", "amplified"}));

  int st_n = 0, st_k = 2, st_samples = 200;
  std::uint64_t st_seed = 1;
  auto* stats_cmd = app.add_subcommand("stats", "Distance statistics of random permutations");
  stats_cmd->add_option("--n", st_n)->required();
  stats_cmd->add_option("--k", st_k)->required();
  stats_cmd->add_option("--samples", st_samples);
  stats_cmd->add_option("--seed", st_seed);

  int id_samples = 200;
  std::uint64_t id_seed = 1;
  auto* ident_cmd = app.add_subcommand("verify-identities", "Run the exact identity checks");
  ident_cmd->add_option("--samples", id_samples);
  ident_cmd->add_option("--seed", id_seed);

  auto* registry_cmd = app.add_subcommand("registry", "Re-verify every registry record");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*profile_cmd) cmd_profile(g, pk, profile_method);
    else if (*check_cmd) cmd_check(g, pk);
    else if (*construct_cmd) cmd_construct(g, co);
    else if (*search_cmd) cmd_search(g, so);
    else if (*mindist_cmd) cmd_mindist(g, mo);
    else if (*espm_cmd) cmd_espm(g, interp, es_sign, es_n);
    else if (*expand_cmd) cmd_expand(g, ex_a, ex_b, ex_samples, ex_seed);
    else if (*moments_cmd) cmd_moments(g, pk);
    else if (*recover_cmd) cmd_recover(g, rec_file, rec_k, rec_method);
    else if (*stats_cmd) cmd_stats(g, st_n, st_k, st_samples, st_seed);
    else if (*ident_cmd) cmd_verify_identities(g, id_samples, id_seed);
    else if (*registry_cmd) return cmd_registry(g);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
