#pragma once
// Command-line front end. Every run emits a config record first, then the
// subcommand's records, then a status record.

#include "qlines/binary_quintic.hpp"
#include "qlines/blowup_ledger.hpp"
#include "qlines/fiber_count.hpp"
#include "qlines/gw_recursion.hpp"
#include "qlines/plane_curve.hpp"
#include "qlines/stable_reduction.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace qlines::cli {

using Json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kFailure = 1, kInvalidFlags = 2, kMalformedCurve = 3, kPrecondition = 4 };

struct RunConfig {
  std::string subcommand;
  std::string curve;
  std::vector<std::uint64_t> primes;
  std::uint64_t seed = 1;
  int retries = 3;
  std::string format = "text";
  unsigned threads = 1;
  double tolerance = 1e-6;
  std::vector<long long> r_values;
  std::vector<std::string> coeffs;
  std::vector<std::string> line;
  std::vector<std::string> alpha, beta;
  bool numeric = false;
  std::string orientation = "standard";
  int d = 5;

  Json to_json() const {
    Json j{{"record", "config"}, {"subcommand", subcommand}, {"curve", curve},  {"primes", primes},
           {"seed", seed},       {"retries", retries},       {"format", format}, {"threads", threads},
           {"tolerance", tolerance}};
    if (subcommand == "gw-recursion") j["r"] = r_values;
    if (subcommand == "invariants" || subcommand == "moduli") j["coeffs"] = coeffs;
    if (subcommand == "restrict") j["line"] = line;
    if (subcommand == "arc-limit") {
      j["alpha"] = alpha;
      j["beta"] = beta;
      j["numeric"] = numeric;
      j["orientation"] = orientation;
    }
    if (subcommand == "plucker") j["d"] = d;
    return j;
  }
};

/// Thrown by subcommands to end the run with a specific exit code and cause.
struct RunError : std::runtime_error {
  RunError(ExitCode c, std::string cause_, const std::string& msg) : std::runtime_error(msg), code(c), cause(std::move(cause_)) {}
  ExitCode code;
  std::string cause;
};

class Emitter {
 public:
  Emitter(std::ostream& out, bool jsonl) : out_(out), jsonl_(jsonl) {}
  void emit(const Json& rec) {
    if (jsonl_) {
      out_ << rec.dump() << "\n";
      return;
    }
    bool first = true;
    for (const auto& [k, v] : rec.items()) {
      if (first) {
        out_ << (v.is_string() ? v.get<std::string>() : v.dump()) << ":";
        first = false;
        continue;
      }
      out_ << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
    }
    out_ << "\n";
  }

 private:
  std::ostream& out_;
  bool jsonl_;
};

namespace detail {

inline std::string q(const Rational& x) { return to_string(x); }

inline PlaneCurve<Rational> load_curve(const RunConfig& c) {
  if (c.curve.empty()) throw RunError(kInvalidFlags, "missing_flag", "--curve is required for " + c.subcommand);
  std::ifstream in(c.curve);
  if (!in) throw RunError(kMalformedCurve, "malformed_curve", "cannot open curve file " + c.curve);
  try {
    return parse_curve(in);
  } catch (const std::exception& e) {
    throw RunError(kMalformedCurve, "malformed_curve", e.what());
  }
}

inline std::vector<Rational> parse_list(const std::vector<std::string>& items, const std::string& flag) {
  std::vector<Rational> out;
  try {
    for (const auto& s : items) out.push_back(parse_rational(s));
  } catch (const std::exception& e) {
    throw RunError(kInvalidFlags, "invalid_flag", flag + ": " + e.what());
  }
  return out;
}

inline BinaryQuintic<Rational> quintic_from(const RunConfig& c) {
  auto v = parse_list(c.coeffs, "--coeffs");
  if (v.size() != 6) throw RunError(kInvalidFlags, "invalid_flag", "--coeffs needs 6 values a0..a5");
  try {
    return BinaryQuintic<Rational>(v);
  } catch (const std::exception& e) {
    throw RunError(kPrecondition, "precondition", e.what());
  }
}

inline Json wp_json(const WPPoint<Rational>& p) { return Json::array({q(p[0]), q(p[1]), q(p[2])}); }

inline Json config_json(const ConfigClass<Rational>& cc) {
  Json j;
  if (auto* s = std::get_if<Smooth5<Rational>>(&cc)) {
    j["class"] = "smooth5";
    j["point"] = wp_json(s->point);
  } else if (auto* o = std::get_if<OneDouble<Rational>>(&cc)) {
    j["class"] = "one_double";
    j["j"] = q(o->j);
  } else {
    j["class"] = "two_doubles";
  }
  return j;
}

// Polynomial arc from its coefficient list, padded to the order the case table needs.
inline ArcSpec arc_from(const RunConfig& c) {
  auto a = parse_list(c.alpha, "--alpha"), b = parse_list(c.beta, "--beta");
  if (a.empty() || b.empty()) throw RunError(kInvalidFlags, "missing_flag", "--alpha and --beta are required");
  auto pad = [](std::vector<Rational> v) {
    int order = 3 * static_cast<int>(v.size()) + 1;
    v.resize(static_cast<std::size_t>(order), Rational(0));
    return Series{v, order};
  };
  try {
    return ArcSpec(pad(a), pad(b));
  } catch (const std::exception& e) {
    throw RunError(kPrecondition, "precondition", e.what());
  }
}

inline void run_invariants(const RunConfig& c, Emitter& em) {
  auto f = quintic_from(c);
  auto iv = invariants(f);
  em.emit({{"record", "invariants"}, {"I4", q(iv.i4)}, {"I8", q(iv.i8)}, {"I12", q(iv.i12)}, {"I18", q(iv.i18)}});
  for (auto p : c.primes) {
    PrimeField field(p);
    std::vector<Fp> red;
    for (int k = 0; k <= 5; ++k) red.push_back(field.from_rational(f[k]));
    try {
      auto ip = invariants(BinaryQuintic<Fp>(red));
      em.emit({{"record", "invariants_mod_p"}, {"prime", p}, {"I4", ip.i4.value()}, {"I8", ip.i8.value()},
               {"I12", ip.i12.value()}, {"I18", ip.i18.value()}});
    } catch (const std::exception& e) {
      em.emit({{"record", "invariants_mod_p"}, {"prime", p}, {"error", e.what()}});
    }
  }
}

inline void run_moduli(const RunConfig& c, Emitter& em) {
  auto f = quintic_from(c);
  Json rec{{"record", "moduli"}};
  try {
    rec["point"] = wp_json(moduli_point(f));
    rec["stable"] = true;
  } catch (const UnstableQuintic& e) {
    throw RunError(kPrecondition, "unstable_quintic", e.what());
  }
  auto cc = classify(f);
  const Json cj = config_json(cc);
  for (const auto& [k, v] : cj.items()) rec[k] = v;
  em.emit(rec);
}

inline void run_restrict(const RunConfig& c, Emitter& em) {
  auto d = load_curve(c);
  auto l = parse_list(c.line, "--line");
  if (l.size() != 3) throw RunError(kInvalidFlags, "invalid_flag", "--line needs dual coordinates u v w");
  try {
    auto chart = LineChart<Rational>::from_dual(l[0], l[1], l[2]);
    auto f = restrict_form(d, chart);
    Json coeffs = Json::array();
    for (int k = 0; k <= 5; ++k) coeffs.push_back(q(f[k]));
    Json rec{{"record", "restriction"}, {"coeffs", coeffs}};
    if (f.is_zero()) {
      rec["on_curve"] = true;
    } else {
      auto bq = BinaryQuintic<Rational>(f);
      try {
        rec["point"] = wp_json(moduli_point(bq));
      } catch (const UnstableQuintic&) {
        rec["point"] = nullptr;
        rec["unstable"] = true;
      }
    }
    em.emit(rec);
  } catch (const RunError&) {
    throw;
  } catch (const std::exception& e) {
    throw RunError(kPrecondition, "precondition", e.what());
  }
}

inline void run_genericity(const RunConfig& c, Emitter& em) {
  auto d = load_curve(c);
  bool all = true;
  for (auto p : c.primes) {
    auto r = genericity_report(d, p, c.seed);
    em.emit({{"record", "genericity"},
             {"prime", p},
             {"seed", c.seed},
             {"smooth", r.smooth},
             {"flex_degree", r.flex_degree},
             {"flex_degree_ok", r.flex_degree_ok},
             {"flex_resultant_squarefree", r.flex_resultant_squarefree},
             {"higher_flex_ok", r.higher_flex_ok},
             {"rational_flexes", r.rational_flexes},
             {"rational_flexes_verified", r.rational_flexes_verified},
             {"generic", r.generic()},
             {"notes", r.notes}});
    all = all && r.generic();
  }
  if (!all) throw RunError(kFailure, "not_generic", "genericity checks failed");
}

inline void run_plucker(const RunConfig& c, Emitter& em) {
  PluckerCounts pc{};
  try {
    pc = plucker_counts(c.d);
  } catch (const std::exception& e) {
    throw RunError(kPrecondition, "precondition", e.what());
  }
  em.emit({{"record", "plucker"},
           {"d", c.d},
           {"dual_degree", pc.dual_degree},
           {"flexes", pc.flexes},
           {"bitangents", pc.bitangents},
           {"combinatorial_degree", combinatorial_degree(pc.bitangents, pc.flexes)}});
}

inline void run_degree_ledger(const RunConfig&, Emitter& em) {
  for (const auto& row : derivation_table()) {
    em.emit({{"record", "ledger_row"}, {"quantity", row.quantity}, {"value", row.value}, {"anchor", row.anchor}});
  }
  const auto pc = plucker_counts(5);
  Ledger l = build_ledger(pc.flexes);
  auto abc = solve_pullback_multiplicities(l);
  auto pb = self_intersection(pullback_class(l, abc), l);
  em.emit({{"record", "degree_ledger"},
           {"delta_sq_wps", q(wps_section_self_intersection({1, 2, 3}, 2))},
           {"delta_sq_m05", q(m05_cross_check())},
           {"multiplicities", Json::array({q(abc[0]), q(abc[1]), q(abc[2])})},
           {"pullback_sq", q(pb)},
           {"degree", q(degree_via_ledger())}});
}

inline void run_fermat(const RunConfig&, Emitter& em) {
  FermatFactorization f;
  try {
    f = fermat_degree_factorization();
  } catch (const std::exception& e) {
    throw RunError(kFailure, "identity_failed", e.what());
  }
  em.emit({{"record", "fermat"},
           {"identities_in_lmn", f.identities_in_lmn},
           {"identities_in_sigma", f.identities_in_sigma},
           {"inverse_on_chart", f.inverse_on_chart},
           {"power_map_degree", f.power_map_degree},
           {"symmetric_quotient_degree", f.symmetric_quotient_degree},
           {"third_map_degree", f.third_map_degree},
           {"degree", f.degree}});
}

inline void run_arc_limit(const RunConfig& c, Emitter& em) {
  auto arc = arc_from(c);
  int sign = c.orientation == "literal" ? -1 : 1;
  auto lim = arc_limit(arc, sign);
  Json rec{{"record", "arc_limit"}, {"case", to_string(arc_case(arc))}, {"n", arc.n() ? Json(*arc.n()) : Json(nullptr)},
           {"m", arc.m() ? Json(*arc.m()) : Json(nullptr)}};
  const Json cj = config_json(lim);
  for (const auto& [k, v] : cj.items()) rec[k] = v;
  if (arc_case(arc) == ArcCase::Balanced) {
    auto [x, y] = exceptional_coordinate(arc);
    rec["exceptional"] = Json::array({q(x), q(y)});
  }
  em.emit(rec);
  if (!c.numeric) return;
  NumericOptions opt;
  opt.tolerance = c.tolerance;
  opt.threads = c.threads;
  NumericLimit num;
  try {
    num = arc_limit_numeric(FlexNormalForm::sample(sign), arc, opt);
  } catch (const std::exception& e) {
    throw RunError(kFailure, "ambiguous_clustering", e.what());
  }
  Json nrec{{"record", "arc_limit_numeric"}, {"status", to_string(num.status)}, {"j", num.j},
            {"error_estimate", num.error_estimate}, {"points_used", num.points_used}};
  if (auto* o = std::get_if<OneDouble<Rational>>(&lim); o && num.status == NumericStatus::Converged) {
    nrec["agrees"] = j_agrees(num.j, static_cast<double>(o->j), c.tolerance);
  } else {
    nrec["agrees"] = std::holds_alternative<TwoDoubles>(lim) && num.status == NumericStatus::Diverged;
  }
  em.emit(nrec);
}

inline void run_fiber_count(const RunConfig& c, Emitter& em) {
  auto d = load_curve(c);
  bool all = true;
  for (auto p : c.primes) {
    FiberReport r;
    try {
      r = count_fiber(d, p, c.seed, c.retries, c.threads);
    } catch (const FieldTooSmall& e) {
      throw RunError(kPrecondition, "field_too_small", e.what());
    }
    Json profile = Json::array();
    for (auto [deg, mult] : r.profile) profile.push_back({deg, mult});
    em.emit({{"record", "fiber_count"},
             {"prime", r.prime},
             {"seed", r.seed},
             {"success", r.success},
             {"target", r.target},
             {"frame", r.frame},
             {"g_degrees", Json::array({r.g1_degree, r.g2_degree})},
             {"bezout", r.bezout},
             {"resultant_degree", r.resultant_degree},
             {"profile", profile},
             {"fiber_degree", r.fiber_degree},
             {"flex_part", Json::array({r.flex_part_degree, r.flex_part_multiplicity})},
             {"base_locus_degree", r.base_locus_degree},
             {"base_locus_confirmed", r.base_locus_confirmed},
             {"retries_used", r.retries_used},
             {"failures", r.failures}});
    all = all && r.success;
  }
  if (!all) throw RunError(kFailure, "retries_exhausted", "fiber count failed on every frame");
}

inline void run_gw(const RunConfig& c, Emitter& em) {
  auto chain = evaluate_chain();
  for (const auto& t : chain.trace) em.emit({{"record", "gw_step"}, {"step", t}});
  Json vals = Json::object();
  for (const auto& [s, v] : chain.values) vals[s.str()] = v.str();
  em.emit({{"record", "gw_values"}, {"values", vals}, {"r_free", chain.values.at(gw::a1_5()).is_constant()}});
  if (c.r_values.empty()) return;
  try {
    Json at = Json::object();
    for (auto r : c.r_values) {
      if (r < 4) throw std::invalid_argument("r must be at least 4, got " + std::to_string(r));
      at[std::to_string(r)] = q(chain.values.at(gw::a1_5())(Rational(r)));
    }
    em.emit({{"record", "gw_check"}, {"values", at}, {"all_420", r_independence_check(c.r_values)}});
  } catch (const std::invalid_argument& e) {
    throw RunError(kPrecondition, "precondition", e.what());
  }
}

inline void run_relation(const RunConfig& c, Emitter& em) {
  auto rel = find_fundamental_relation(c.seed);
  Json terms = Json::array();
  for (std::size_t k = 0; k < rel.exponents.size(); ++k) {
    if (rel.coefficients[k] == 0) continue;
    terms.push_back({{"exponents", rel.exponents[k]}, {"coefficient", q(rel.coefficients[k])}});
  }
  em.emit({{"record", "relation"}, {"nullity", rel.nullity}, {"terms", terms}});
}

}  // namespace detail

/// Parses argv-style arguments (without the program name) and runs the subcommand.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out) {
  RunConfig cfg;
  CLI::App app{"Degree computations for the moduli map of lines on a plane quintic", "qlines"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--curve", cfg.curve, "curve file: records 'i j k coeff' with i+j+k = 5");
  app.add_option("--prime", cfg.primes, "prime (repeatable)")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--retries", cfg.retries, "frame retries for fiber-count")->check(CLI::NonNegativeNumber);
  app.add_option("--format", cfg.format, "text or jsonl")->check(CLI::IsMember({"text", "jsonl"}));
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--tolerance", cfg.tolerance, "numeric oracle tolerance")->check(CLI::PositiveNumber);
  app.add_option("--r", cfg.r_values, "r values for gw-recursion");
  app.add_option("--coeffs", cfg.coeffs, "binary quintic a0..a5");
  app.add_option("--line", cfg.line, "dual coordinates u v w");
  app.add_option("--alpha", cfg.alpha, "alpha(t) coefficients from t^0")->delimiter(',');
  app.add_option("--beta", cfg.beta, "beta(t) coefficients from t^0")->delimiter(',');
  app.add_flag("--numeric", cfg.numeric, "also run the numeric oracle");
  app.add_option("--orientation", cfg.orientation, "flex normal form sign")->check(CLI::IsMember({"standard", "literal"}));
  app.add_option("--d", cfg.d, "curve degree for plucker");

  const std::vector<std::pair<std::string, std::string>> subs = {
      {"invariants", "I4, I8, I12, I18 of a binary quintic"},
      {"moduli", "weighted moduli point and configuration class"},
      {"restrict", "restriction of a curve to a line"},
      {"genericity", "smoothness and flex checks over F_p"},
      {"plucker", "dual degree, flexes, bitangents"},
      {"degree-ledger", "intersection ledger and degree 420"},
      {"fermat-check", "Fermat quintic identities and degree"},
      {"arc-limit", "limit configuration along an arc"},
      {"fiber-count", "count one fiber of the moduli map over F_p"},
      {"gw-recursion", "degeneration recursion in r"},
      {"relation", "the degree-36 relation among the invariants"},
  };
  for (const auto& [name, help] : subs) app.add_subcommand(name, help);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    Emitter(out, cfg.format == "jsonl").emit({{"record", "error"}, {"cause", "invalid_flags"}, {"message", e.what()}});
    return kInvalidFlags;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (cfg.primes.empty()) cfg.primes = {10007};
  for (auto p : cfg.primes) {
    if (!is_prime(p) || p < kMinPrime || p >= (1ull << 62)) {
      Emitter(out, cfg.format == "jsonl")
          .emit({{"record", "error"},
                 {"cause", "invalid_flags"},
                 {"message", std::to_string(p) + " is not a prime in [" + std::to_string(kMinPrime) + ", 2^62)"}});
      return kInvalidFlags;
    }
  }

  Emitter em(out, cfg.format == "jsonl");
  em.emit(cfg.to_json());
  try {
    const auto& s = cfg.subcommand;
    if (s == "invariants") detail::run_invariants(cfg, em);
    else if (s == "moduli") detail::run_moduli(cfg, em);
    else if (s == "restrict") detail::run_restrict(cfg, em);
    else if (s == "genericity") detail::run_genericity(cfg, em);
    else if (s == "plucker") detail::run_plucker(cfg, em);
    else if (s == "degree-ledger") detail::run_degree_ledger(cfg, em);
    else if (s == "fermat-check") detail::run_fermat(cfg, em);
    else if (s == "arc-limit") detail::run_arc_limit(cfg, em);
    else if (s == "fiber-count") detail::run_fiber_count(cfg, em);
    else if (s == "gw-recursion") detail::run_gw(cfg, em);
    else if (s == "relation") detail::run_relation(cfg, em);
  } catch (const RunError& e) {
    em.emit({{"record", "status"}, {"ok", false}, {"cause", e.cause}, {"message", e.what()}});
    return e.code;
  } catch (const std::exception& e) {
    em.emit({{"record", "status"}, {"ok", false}, {"cause", "internal"}, {"message", e.what()}});
    return kFailure;
  }
  em.emit({{"record", "status"}, {"ok", true}});
  return kOk;
}

inline int dispatch(int argc, char** argv, std::ostream& out) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, out);
}

}  // namespace qlines::cli
