#pragma once

// Command-line surface. Exit codes: 0 affirmative, 1 negative finding,
// 2 usage or input error, 3 resource ceiling.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "unitcycle/unitcycle.hpp"

namespace unitcycle::cli {

enum ExitCode : int { kAffirmative = 0, kNegative = 1, kUsage = 2, kCeiling = 3 };

struct CommandResult {
  int exit_code = kAffirmative;
  std::string out;  // human text, or one JSON document under --json
  std::string err;
};

namespace detail {

struct Context {
  bool json = false;
  std::size_t ceiling = 2'000'000;
  std::ostringstream out;
  std::ostringstream err;
};

inline std::size_t default_ceiling() {
  if (const char* env = std::getenv("UNITCYCLE_CEILING"); env != nullptr && *env != '\0') {
    const BigInt v = parse_bigint(env);
    if (v < 1) throw invalid_input("UNITCYCLE_CEILING must be positive");
    return v.get_ui();
  }
  return 2'000'000;
}

inline void emit(Context& ctx, const json& j, const std::string& text) {
  if (ctx.json) {
    ctx.out << j.dump(2) << '\n';
  } else {
    ctx.out << text;
    if (!text.empty() && text.back() != '\n') ctx.out << '\n';
  }
}

inline SearchConfig mode_with_ceiling(const std::string& mode, const Context& ctx) {
  SearchConfig cfg = SearchConfig::parse(mode);
  cfg.term_ceiling = ctx.ceiling;
  return cfg;
}

inline std::string read_relation_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '@') {
    std::ifstream f(arg.substr(1));
    if (!f) throw invalid_input("cannot read " + arg.substr(1));
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
  return arg;
}

inline std::string join(const std::vector<BigInt>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s;
}

// --- subcommands -----------------------------------------------------------

inline int run_admits(Context& ctx, const std::string& primes, const std::string& mode) {
  const InversionSet s = InversionSet::parse(primes);
  const SearchConfig cfg = mode_with_ceiling(mode, ctx);
  const AdmitResult r = admits_4cycle(s, cfg);
  json j{{"ring", ring_to_json(s)}, {"mode", cfg.to_string()}, {"bound", cfg.bound}, {"admits", r.admits}};
  j["witness"] = r.witness ? relation_to_json(*r.witness) : json(nullptr);
  std::string text = r.admits ? "admits a 4-cycle (" + cfg.to_string() + "): witness " + relation_equation(*r.witness)
                              : "avoids within bound " + std::to_string(cfg.bound) + " (" + cfg.to_string() + ")";
  emit(ctx, j, text);
  return r.admits ? kAffirmative : kNegative;
}

inline int run_interpolate(Context& ctx, const std::string& points, const std::string& ring) {
  const auto pts = parse_rational_list(points);
  const InversionSet s = InversionSet::parse(ring);
  try {
    const CycleWitness w = lagrange_cycle_poly(pts, s);
    emit(ctx, json{{"ok", true}, {"witness", witness_to_json(w)}},
         "f(x) = " + w.polynomial.expression() + "\ncoefficients (lowest degree first): " + w.polynomial.coefficient_list());
    return kAffirmative;
  } catch (const not_in_ring& e) {
    emit(ctx, json{{"ok", false}, {"reason", e.what()}, {"coefficient", e.value()}, {"bad_prime", e.bad_prime()}},
         std::string("no polynomial over the ring: ") + e.what());
    return kNegative;
  }
}

inline int run_verify_cycle(Context& ctx, const std::string& poly, const std::string& points, const std::string& ring) {
  CycleWitness w{InversionSet::parse(ring), parse_rational_list(points), RationalPolynomial::parse(poly)};
  const CycleCheck c = verify_cycle(w);
  emit(ctx, json{{"ok", c.ok}, {"reason", to_string(c.reason)}, {"detail", c.detail}, {"witness", witness_to_json(w)}},
       c.ok ? "verified: " + std::to_string(w.points.size()) + "-cycle of " + w.polynomial.expression()
            : std::string("not a cycle: ") + to_string(c.reason) + (c.detail.empty() ? "" : " (" + c.detail + ")"));
  return c.ok ? kAffirmative : kNegative;
}

inline int run_orbit(Context& ctx, const std::string& poly, const std::string& start, std::size_t max_iter,
                     std::size_t bits) {
  const OrbitReport r = orbit(RationalPolynomial::parse(poly), parse_rational(start), max_iter, bits);
  std::string text;
  if (r.outcome == OrbitOutcome::cycle)
    text = "preperiod " + std::to_string(r.preperiod) + ", period " + std::to_string(r.period);
  else if (r.outcome == OrbitOutcome::escaping)
    text = "escaping orbit after " + std::to_string(r.iterations) + " iterations";
  else
    text = "no cycle within " + std::to_string(max_iter) + " iterations";
  emit(ctx, orbit_to_json(r), text);
  return r.outcome == OrbitOutcome::cycle ? kAffirmative : kNegative;
}

inline int run_zieve(Context& ctx, const std::string& ring, unsigned bound) {
  const InversionSet s = InversionSet::parse(ring);
  const auto hit = zieve_unit_search(s, bound, ctx.ceiling);
  if (!hit) {
    emit(ctx, json{{"ring", ring_to_json(s)}, {"bound", bound}, {"found", false}},
         "no unit pair within exponent bound " + std::to_string(bound));
    return kNegative;
  }
  const auto& [u, v] = *hit;
  json j{{"ring", ring_to_json(s)}, {"bound", bound}, {"found", true}, {"u", to_string(u)}, {"v", to_string(v)}};
  std::string text = "u = " + to_string(u) + ", v = " + to_string(v);
  try {
    const Relation rel = zieve_relation(u, v, s);
    j["relation"] = relation_to_json(rel);
    text += "\nderived relation: " + relation_equation(rel);
  } catch (const invalid_input&) {
    j["relation"] = nullptr;
  }
  emit(ctx, j, text);
  return kAffirmative;
}

inline int run_certify(Context& ctx, const std::string& primes, const std::string& mode) {
  const InversionSet s = InversionSet::parse(primes);
  const SearchConfig cfg = mode_with_ceiling(mode, ctx);
  const SeparationResult r = separation_certificate(s, cfg);
  if (const auto* cert = std::get_if<AvoidanceCertificate>(&r)) {
    emit(ctx, json{{"certified", true}, {"certificate", certificate_to_json(*cert)}},
         "certified: " + std::to_string(cert->products.size()) + " products are 3-separated; {" + s.to_string() +
             "} avoids 4-cycles in mode " + cfg.to_string());
    return kAffirmative;
  }
  const auto& bad = std::get<SeparationCounterexample>(r);
  emit(ctx, json{{"certified", false}, {"smaller", to_string(bad.smaller)}, {"larger", to_string(bad.larger)}},
       "no certificate: 3*" + to_string(bad.smaller) + " >= " + to_string(bad.larger) +
           " (not a proof that a 4-cycle exists)");
  return kNegative;
}

inline int run_build_avoiding(Context& ctx, int k, int n, const std::string& start) {
  const auto primes = construct_avoiding_set(k, n, parse_bigint(start));
  SearchConfig cfg = SearchConfig::npower(static_cast<unsigned>(n));
  cfg.term_ceiling = ctx.ceiling;
  bool certified = false;
  try {
    certified = std::holds_alternative<AvoidanceCertificate>(separation_certificate(InversionSet(primes), cfg));
  } catch (const search_too_large&) {
  }
  emit(ctx, json{{"primes", join(primes)}, {"mode", cfg.to_string()}, {"certified", certified}},
       join(primes) + (certified ? "  (separation certificate verified)" : ""));
  return kAffirmative;
}

inline int run_abc_pair(Context& ctx, const std::string& c, int m, const std::string& seed) {
  const AbcPairReport r = abc_pair(parse_rational(c), m, parse_bigint(seed));
  std::string text = "p1 = " + to_string(r.p1) + "\np2 = " + to_string(r.p2) + "\n";
  for (const auto& ch : r.checks)
    text += "  [" + std::string(ch.pass ? "pass" : "FAIL") + "] " + ch.name + " (" + std::to_string(ch.inequalities.size()) +
            " inequalities)\n";
  text += r.valid() ? "all checks pass" : "some checks fail";
  emit(ctx, report_to_json(r), text);
  return r.valid() ? kAffirmative : kNegative;
}

inline int run_bb_check(Context& ctx, const std::string& relation, const std::string& c, const std::string& eps) {
  json parsed;
  try {
    parsed = json::parse(read_relation_arg(relation));
  } catch (const json::parse_error& e) {
    throw invalid_input(std::string("--relation is not valid JSON: ") + e.what());
  }
  const Relation rel = relation_from_json(parsed.contains("witness") ? parsed.at("witness") : parsed);
  const bool ok = check_bb_inequality(rel, parse_rational(c), parse_rational(eps));
  emit(ctx, json{{"relation", relation_to_json(rel)}, {"C", c}, {"epsilon", eps}, {"holds", ok}},
       std::string(ok ? "holds" : "fails") + ": max|a_i| <= C * rad^(3+eps) for " + relation_equation(rel));
  return ok ? kAffirmative : kNegative;
}

inline int run_lenstra(Context& ctx, const std::optional<std::string>& ring, std::optional<int> k, unsigned bound,
                       std::optional<int> obstruction, std::optional<long> cycle_length) {
  json j = json::object();
  std::string text;
  bool affirmative = true;
  if (obstruction) {
    const bool holds = z2_four_clique_obstruction(*obstruction);
    j["z2_obstruction"] = json{{"bound", *obstruction}, {"holds", holds}};
    text += std::string("Z[1/2] four-clique obstruction over [-") + std::to_string(*obstruction) + "," +
            std::to_string(*obstruction) + "]: " + (holds ? "holds" : "FAILS") + "\n";
    affirmative = affirmative && holds;
  }
  if (cycle_length) {
    const bool ok = z2_admissible_cycle_length(*cycle_length);
    j["cycle_length"] = json{{"k", *cycle_length}, {"three_smooth", ok}};
    text += "cycle length " + std::to_string(*cycle_length) + (ok ? " is 3-smooth (not excluded over Z[1/2])\n"
                                                                  : " is not 3-smooth: excluded over Z[1/2]\n");
    affirmative = affirmative && ok;
  }
  if (ring || k) {
    if (!ring || !k) throw invalid_input("lenstra: --ring and --k go together");
    const InversionSet s = InversionSet::parse(*ring);
    const auto w = unit_difference_clique(s, *k, bound, ctx.ceiling);
    j["clique"] = w ? clique_to_json(*w) : json(nullptr);
    j["k"] = *k;
    j["bound"] = bound;
    if (w) {
      text += "clique of size " + std::to_string(*k) + ": {" + [&] {
        std::string e;
        for (std::size_t i = 0; i < w->elements.size(); ++i) e += (i ? ", " : "") + to_string(w->elements[i]);
        return e;
      }() + "}\n";
    } else {
      text += "no clique of size " + std::to_string(*k) + " within bound " + std::to_string(bound) + "\n";
    }
    affirmative = affirmative && w.has_value();
  }
  if (j.empty()) throw invalid_input("lenstra: give --ring/--k, --obstruction or --cycle-length");
  emit(ctx, j, text);
  return affirmative ? kAffirmative : kNegative;
}

struct SurveyArgs {
  std::size_t pool = 12;
  std::size_t size = 5;
  std::string mode = "linear";
  bool full = false;
  std::size_t sample = 0;
  std::uint64_t seed = kDefaultSampleSeed;
  unsigned workers = 1;
  std::string csv, svg, aggregate_json;
  std::size_t subset_ceiling = 100'000;
};

inline int run_survey(Context& ctx, const SurveyArgs& a) {
  SurveyOptions opt;
  opt.pool = a.pool;
  opt.subset_size = a.size;
  opt.mode = mode_with_ceiling(a.mode, ctx);
  opt.full = a.full;
  opt.workers = a.workers;
  opt.subset_ceiling = a.subset_ceiling;
  SurveyResult res;
  if (a.sample > 0) {
    res = survey_sample(opt, a.sample, a.seed);
  } else {
    res = survey_run(opt);
  }
  if (!a.csv.empty()) emit_csv(res.rows, a.csv);
  if (!a.svg.empty()) emit_scatter_svg(res.aggregate, a.svg);
  if (!a.aggregate_json.empty()) {
    std::ofstream f(a.aggregate_json, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + a.aggregate_json + " for writing");
    f << aggregate_to_json(res.aggregate).dump(2) << '\n';
  }
  std::ostringstream text;
  text << res.rows.size() << " inversion sets surveyed (" << opt.mode.to_string() << ")\n";
  text << "min_gap relation_count frequency\n";
  for (const auto& p : res.aggregate.points) text << to_string(p.min_gap) << ' ' << p.relation_count << ' ' << p.frequency << '\n';
  json j{{"rows", res.rows.size()}, {"mode", opt.mode.to_string()}, {"aggregate", aggregate_to_json(res.aggregate)}};
  emit(ctx, j, text.str());
  return kAffirmative;
}

}  // namespace detail

/// Parses and runs one command. Never throws.
inline CommandResult dispatch(const std::vector<std::string>& args) {
  detail::Context ctx;
  CLI::App app{"Exact search, construction and certification of polynomial 4-cycles over Z[1/p1,...,1/pn]", "unitcycle"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  app.add_flag("--json", ctx.json, "Emit one JSON document instead of text");
  std::optional<std::size_t> ceiling;
  app.add_option("--ceiling", ceiling, "Search ceiling on generated terms (default 2e6, env UNITCYCLE_CEILING)");

  std::string primes, mode = "linear", points, ring, poly, start, c, seed = "0", relation, eps, start_prime = "3";
  int k = 0, n = 1, m = 0;
  unsigned bound = 2;
  std::size_t max_iter = 100, bits = kDefaultOrbitBitCeiling;
  std::optional<std::string> lenstra_ring;
  std::optional<int> lenstra_k, obstruction;
  std::optional<long> cycle_length;
  unsigned lenstra_bound = 4;
  detail::SurveyArgs sa;

  auto* admits = app.add_subcommand("admits", "Search for a 4-term relation over an inversion set");
  admits->add_option("primes", primes, "Comma-separated primes")->required();
  admits->add_option("--mode", mode, "linear | npower:N | general:B");

  auto* interp = app.add_subcommand("interpolate", "Cubic through a 4-cycle x1 -> x2 -> x3 -> x4 -> x1");
  interp->add_option("points", points, "x1,x2,x3,x4 (exact fractions)")->required();
  interp->add_option("--ring", ring, "Inversion set")->required();

  auto* verify = app.add_subcommand("verify-cycle", "Check that a polynomial permutes points cyclically");
  verify->add_option("--poly", poly, "Coefficients, lowest degree first")->required();
  verify->add_option("--points", points, "Cycle points")->required();
  verify->add_option("--ring", ring, "Inversion set")->required();

  auto* orb = app.add_subcommand("orbit", "Iterate a polynomial exactly and detect a cycle");
  orb->add_option("--poly", poly, "Coefficients, lowest degree first")->required();
  orb->add_option("--start", start, "Starting value")->required();
  orb->add_option("--max", max_iter, "Maximum iterations")->check(CLI::PositiveNumber);
  orb->add_option("--bit-ceiling", bits, "Escape once an iterate needs more bits");

  auto* zieve = app.add_subcommand("zieve", "Search units u, v with u+v ~ u+1 and 1+u+v a unit");
  zieve->add_option("--ring", ring, "Inversion set")->required();
  zieve->add_option("--bound", bound, "Exponent bound");

  auto* certify = app.add_subcommand("certify-avoid", "3-separation certificate for a product set");
  certify->add_option("primes", primes, "Comma-separated primes")->required();
  certify->add_option("--mode", mode, "linear | npower:N");

  auto* build = app.add_subcommand("build-avoiding", "Construct primes p_j > 3 prod p_i^n");
  build->add_option("--k", k, "Number of primes")->required();
  build->add_option("--n", n, "Exponent bound n")->required();
  build->add_option("--start", start_prime, "p1 is the first prime after max(3, start)");

  auto* abc = app.add_subcommand("abc-pair", "Two-prime construction, conditional on the 4-term ABC bound");
  abc->add_option("--C", c, "Constant C_{4,1} (exact fraction)")->required();
  abc->add_option("--m", m, "Parameter m >= 9 with 3^m > C")->required();
  abc->add_option("--seed", seed, "p1 is the first prime after max(18^m, seed)");

  auto* bb = app.add_subcommand("bb-check", "Check max|a_i| <= C rad^(3+eps) for a relation");
  bb->add_option("--relation", relation, "Relation JSON (or @file)")->required();
  bb->add_option("--C", c, "Constant C")->required();
  bb->add_option("--eps", eps, "Exponent slack epsilon >= 0")->required();

  auto* len = app.add_subcommand("lenstra", "Unit-difference cliques and Z[1/2] cycle-length checks");
  len->add_option("--ring", lenstra_ring, "Inversion set (\"\" or Z for the integers)");
  len->add_option("--k", lenstra_k, "Clique size");
  len->add_option("--bound", lenstra_bound, "Exponent bound");
  len->add_option("--obstruction", obstruction, "Run the Z[1/2] four-clique obstruction up to this bound");
  len->add_option("--cycle-length", cycle_length, "Test 3-smoothness of a Z[1/2] cycle length");

  auto* sur = app.add_subcommand("survey", "Relation counts vs. minimum gap over subsets of the first N primes");
  sur->add_option("--pool", sa.pool, "Use the first N primes")->required();
  sur->add_option("--size", sa.size, "Subset size")->required();
  sur->add_option("--mode", sa.mode, "linear | npower:N | general:B");
  sur->add_flag("--full", sa.full, "Allow scans beyond the subset ceiling");
  sur->add_option("--sample", sa.sample, "Survey this many uniformly random subsets instead");
  sur->add_option("--seed", sa.seed, "Sampling seed (default 0x5EED)");
  sur->add_option("--workers", sa.workers, "Worker threads")->check(CLI::PositiveNumber);
  sur->add_option("--subset-ceiling", sa.subset_ceiling, "Largest family scanned without --full");
  sur->add_option("--csv", sa.csv, "Write rows as CSV");
  sur->add_option("--svg", sa.svg, "Write the scatter plot as SVG");
  sur->add_option("--aggregate-json", sa.aggregate_json, "Write the aggregate as JSON");

  std::vector<const char*> argv{"unitcycle"};
  for (const auto& a : args) argv.push_back(a.c_str());
  CommandResult result;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    return result;
  } catch (const CLI::CallForAllHelp&) {
    result.out = app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = kUsage;
    result.err = std::string(e.what()) + "\n\n" + app.help();
    return result;
  }

  try {
    ctx.ceiling = ceiling ? *ceiling : detail::default_ceiling();
    if (ctx.ceiling < 1) throw invalid_input("--ceiling must be positive");
    if (*admits) result.exit_code = detail::run_admits(ctx, primes, mode);
    else if (*interp) result.exit_code = detail::run_interpolate(ctx, points, ring);
    else if (*verify) result.exit_code = detail::run_verify_cycle(ctx, poly, points, ring);
    else if (*orb) result.exit_code = detail::run_orbit(ctx, poly, start, max_iter, bits);
    else if (*zieve) result.exit_code = detail::run_zieve(ctx, ring, bound);
    else if (*certify) result.exit_code = detail::run_certify(ctx, primes, mode);
    else if (*build) result.exit_code = detail::run_build_avoiding(ctx, k, n, start_prime);
    else if (*abc) result.exit_code = detail::run_abc_pair(ctx, c, m, seed);
    else if (*bb) result.exit_code = detail::run_bb_check(ctx, relation, c, eps);
    else if (*len) result.exit_code = detail::run_lenstra(ctx, lenstra_ring, lenstra_k, lenstra_bound, obstruction, cycle_length);
    else if (*sur) result.exit_code = detail::run_survey(ctx, sa);
  } catch (const search_too_large& e) {
    result.exit_code = kCeiling;
    ctx.err << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    result.exit_code = kUsage;
    ctx.err << e.what() << '\n';
  } catch (const std::exception& e) {
    result.exit_code = kUsage;
    ctx.err << e.what() << '\n';
  }
  result.out = ctx.out.str();
  result.err += ctx.err.str();
  return result;
}

}  // namespace unitcycle::cli
