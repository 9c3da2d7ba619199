#ifndef MU3CPP_APP_HPP
#define MU3CPP_APP_HPP

// Command-line front end.  Exit codes: 0 confirmed, 1 mathematical failure
// (not a PP/CPP, fixture mismatch, discrepancy), 2 usage, 3 hypothesis
// violation.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "serialize.hpp"

namespace mu3 {

enum ExitCode : int { kExitOk = 0, kExitMathFailure = 1, kExitUsage = 2, kExitHypothesis = 3 };

struct CommandConfig {
  std::string command;
  std::string field;
  std::optional<std::string> delta;
  std::optional<std::string> gamma;
  std::optional<std::string> omega;
  std::vector<std::string> c;
  std::optional<u64> r;
  std::optional<u64> k;
  std::optional<u64> q_min;
  std::optional<u64> q_max;
  std::optional<u64> k_max;
  std::string format = "json";
  std::optional<std::string> out;
  bool pp_only = false;
  bool failures = false;
  bool prime_powers = false;
  u64 seed = 0;
  std::optional<u64> only;
  bool corrupt_fixture = false;
  unsigned threads = 0;
};

/// `count` exponents drawn uniformly (with a fixed seed) from the units mod m,
/// distinct while enough units exist.
inline std::vector<u64> seeded_units(u64 m, std::size_t count, u64 seed) {
  auto units = units_mod(m);
  std::mt19937_64 rng(seed);
  std::shuffle(units.begin(), units.end(), rng);
  std::vector<u64> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(units[i % units.size()]);
  return out;
}

namespace detail {

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Builds the trinomial described by --field/--r|--k/--delta|--gamma|--c.
struct BuiltShape {
  CycloTrinomial t;
  std::optional<FieldElement> delta;
  std::optional<FieldElement> gamma;
};

inline BuiltShape build_shape(const CommandConfig& cfg) {
  if (cfg.field.empty()) throw UsageError("--field is required");
  const int forms = (cfg.delta ? 1 : 0) + (cfg.gamma ? 1 : 0) + (cfg.c.empty() ? 0 : 1);
  if (forms != 1) throw UsageError("give exactly one of --delta, --gamma, --c");
  if (!cfg.c.empty() && cfg.c.size() != 3) throw UsageError("--c takes exactly three values");
  if (cfg.r.has_value() == cfg.k.has_value()) throw UsageError("give exactly one of --r, --k");

  const FieldSpec f = parse_field(cfg.field);
  std::optional<FieldElement> omega;
  if (cfg.omega) omega = parse_element(f, *cfg.omega);
  BuiltShape out{CycloTrinomial{}, std::nullopt, std::nullopt};
  Mu3Context ctx = make_mu3(f, omega);
  if (cfg.delta) {
    out.delta = parse_element(f, *cfg.delta);
    if (!ctx.index_of(*out.delta)) throw Error(ErrorCode::DeltaNotInMu3, "delta is not a cube root of unity");
    if (!omega) ctx = context_for_delta(f, *out.delta);
  }
  const u64 r = cfg.r ? *cfg.r : 1 + *cfg.k * ctx.s;
  if (r == 0) throw UsageError("--r must be positive");
  if (cfg.delta) {
    out.t = build_delta_family(ctx, *out.delta, r);
  } else if (cfg.gamma) {
    out.gamma = parse_element(f, *cfg.gamma);
    out.t = build_gamma_family(ctx, *out.gamma, r);
  } else {
    out.t = make_trinomial(ctx, r, {parse_element(f, cfg.c[0]), parse_element(f, cfg.c[1]), parse_element(f, cfg.c[2])});
  }
  return out;
}

/// Why the scalar criterion does not apply, or nullopt when it does.
inline std::optional<std::string> scalar_inapplicable(const CycloTrinomial& t) {
  const FieldSpec& f = t.spec();
  if (f.q() % 9 != 1) return "q is not 1 mod 9";
  if ((t.r - 1) % t.ctx.s != 0) return "r is not 1 mod s";
  for (auto c : t.c) {
    if (f.pow(c, t.ctx.s) != f.one()) return "c(u)^s != 1 for some u";
  }
  return std::nullopt;
}

inline std::string mu3_text(const Mu3Context& ctx, const Mu3Triple& t) {
  std::string out = "(";
  for (int i = 0; i < 3; ++i) {
    if (i) out += ", ";
    out += t[i] ? format_element(ctx.spec, ctx.mu3[*t[i]]) : "-";
  }
  return out + ")";
}

template <std::size_t N>
std::string elements_text(const FieldSpec& f, const std::array<FieldElement, N>& a) {
  std::string out = "(";
  for (std::size_t i = 0; i < N; ++i) {
    if (i) out += ", ";
    out += format_element(f, a[i]);
  }
  return out + ")";
}

inline int cmd_verify(const CommandConfig& cfg, std::ostream& out) {
  const auto shape = build_shape(cfg);
  const CycloTrinomial& t = shape.t;
  const FieldSpec& f = t.spec();
  const auto zieve = zieve_check(zieve_input_for(t));
  const auto oracle = check_pp_cpp(t);
  const bool confirmed = cfg.pp_only ? oracle.f_is_pp : oracle.is_cpp;

  json j;
  j["trinomial"] = trinomial_json(t);
  j["dense_F"] = format_polynomial(f, dense_coefficients_F(t));
  j["zieve"] = {{"is_pp", zieve.is_pp}, {"gcd_ok", zieve.gcd_ok}, {"images", json::array()}};
  for (auto e : zieve.mu_d_image) j["zieve"]["images"].push_back(format_element(f, e));
  if (shape.delta || shape.gamma) {
    Bbd3Params params{shape.delta ? Bbd3Variant::DeltaForm : Bbd3Variant::GammaForm,
                      shape.delta.value_or(FieldElement{}), shape.gamma.value_or(FieldElement{}), t.r};
    const auto h = bbd3_hypothesis(t.ctx, params);
    j["family_hypothesis"] = {{"holds", h.holds},
                              {"witness", format_element(f, h.witness)},
                              {"gcd_r_q_minus_1", gcd(t.r, f.q() - 1)}};
  }
  std::optional<GeneralReport> general;
  if (t.c_nonzero()) {
    general = general_cpp_check(t);
    j["general"] = general_report_json(t.ctx, *general);
  } else {
    j["general"] = {{"skipped", "c vanishes on mu3"}};
  }
  std::optional<ScalarReport> scalar;
  if (auto why = scalar_inapplicable(t)) {
    j["scalar"] = {{"skipped", *why}};
  } else {
    scalar = scalar_cpp_check(t);
    j["scalar"] = scalar_report_json(t.ctx, *scalar);
    const auto cv = constant_v_check(*scalar);
    j["scalar"]["constant_v"] = cv.family_certified;
  }
  j["oracle"] = {{"f_is_pp", oracle.f_is_pp},
                 {"F_is_pp", oracle.F_is_pp},
                 {"is_cpp", oracle.is_cpp},
                 {"f", verdict_json(f, oracle.f)},
                 {"F", verdict_json(f, oracle.F)}};
  j["confirmed"] = confirmed;

  if (cfg.format == "text") {
    out << "field F_" << f.name() << ", r = " << t.r << ", c = " << elements_text(f, t.c) << "\n";
    out << "F(X) = " << j["dense_F"].get<std::string>() << "\n";
    out << "zieve: " << (zieve.is_pp ? "PP" : "not PP") << "\n";
    if (general) {
      out << "general: G1=" << general->g1.pass << " G2=" << general->g2.pass << " G3=" << general->g3.pass
          << " G4=" << general->g4.pass << " v=" << mu3_text(t.ctx, general->v) << "\n";
      for (const auto* c : {&general->g1, &general->g2, &general->g3, &general->g4}) {
        if (!c->pass && !c->detail.empty()) out << "  " << c->detail << "\n";
      }
    }
    if (scalar) {
      out << "scalar: k=" << scalar->k << " tau=" << elements_text(f, scalar->tau)
          << " v=" << mu3_text(t.ctx, scalar->v) << " H1=" << scalar->h1 << " H2=" << scalar->h2 << "\n";
    }
    out << "oracle: f " << (oracle.f_is_pp ? "is" : "is not") << " a PP, F " << (oracle.F_is_pp ? "is" : "is not")
        << " a PP";
    if (oracle.F.collision) {
      out << " (F(" << format_element(f, oracle.F.collision->first) << ") = F("
          << format_element(f, oracle.F.collision->second) << ") = " << format_element(f, *oracle.F.collision_image)
          << ")";
    }
    out << "\n" << (confirmed ? (cfg.pp_only ? "PP" : "CPP") : (cfg.pp_only ? "not PP" : "not CPP")) << "\n";
  } else {
    out << j.dump() << "\n";
  }
  return confirmed ? kExitOk : kExitMathFailure;
}

inline int cmd_certify(const CommandConfig& cfg, std::ostream& out) {
  const auto shape = build_shape(cfg);
  const CycloTrinomial& t = shape.t;
  const FieldElement delta = shape.delta.value_or(t.ctx.omega);
  const auto cert = scalar_inapplicable(t) ? certify_general(t, delta) : certify_scalar(t, delta);
  if (!cert) {
    out << json{{"certified", false}}.dump() << "\n";
    return kExitMathFailure;
  }
  out << certificate_json(*cert).dump() << "\n";
  return cert->oracle_confirmed ? kExitOk : kExitMathFailure;
}

inline int cmd_search(const CommandConfig& cfg, std::ostream& out) {
  if (cfg.failures) {
    if (!cfg.q_min || !cfg.q_max) throw UsageError("--failures needs --q-min and --q-max");
    if (*cfg.q_min > *cfg.q_max) throw UsageError("--q-min exceeds --q-max");
    const auto scan = counterexample_scan(*cfg.q_min, *cfg.q_max, cfg.threads);
    std::size_t next = 0;
    for (const auto& m : scan.meta) {
      for (; next < scan.records.size() && scan.records[next].spec.q() == m.q; ++next) {
        json j = failure_json(scan.records[next]);
        j["kind"] = "failure";
        out << j.dump() << "\n";
      }
      out << json{{"kind", "scan_meta"},
                  {"q", m.q},
                  {"r_policy", m.exhaustive_r ? "all units mod q-1" : "first 50 units mod q-1"},
                  {"r_tested", m.r_tested},
                  {"shapes_tested", m.shapes_tested},
                  {"failures", m.failures}}
                 .dump()
          << "\n";
    }
    return kExitOk;
  }
  const u64 k_max = cfg.k_max.value_or(3);
  std::vector<Certificate> certs;
  if (!cfg.field.empty()) {
    certs = scan_scalar_families(parse_field(cfg.field), k_max).certificates;
  } else {
    if (!cfg.q_min || !cfg.q_max) throw UsageError("search needs --field or --q-min/--q-max");
    if (*cfg.q_min > *cfg.q_max) throw UsageError("--q-min exceeds --q-max");
    certs = scan_scalar_range(*cfg.q_min, *cfg.q_max, k_max, cfg.threads);
  }
  bool all_confirmed = true;
  for (const auto& c : certs) {
    out << certificate_json(c).dump() << "\n";
    all_confirmed = all_confirmed && c.oracle_confirmed;
  }
  return all_confirmed ? kExitOk : kExitMathFailure;
}

inline int cmd_census(const CommandConfig& cfg, std::ostream& out) {
  if (!cfg.q_max) throw UsageError("census needs --q-max");
  if (*cfg.q_max > kCensusMaxOrder) throw UsageError("--q-max is limited to 10000");
  const auto rows = census(*cfg.q_max, cfg.k_max.value_or(6), cfg.prime_powers, cfg.threads);
  std::size_t discrepancies = 0;
  if (cfg.format == "json") {
    for (const auto& r : rows) {
      out << json{{"q", r.q},
                  {"p", r.p},
                  {"n", r.n},
                  {"s", r.s},
                  {"admissible_delta", r.admissible_delta},
                  {"scalar_certified", r.scalar_certified},
                  {"oracle_cpp", r.oracle_cpp},
                  {"discrepancies", r.discrepancies}}
                 .dump()
          << "\n";
      discrepancies += r.discrepancies;
    }
  } else {
    out << kCensusHeader << "\n";
    for (const auto& r : rows) {
      out << census_csv_row(r) << "\n";
      discrepancies += r.discrepancies;
    }
  }
  return discrepancies == 0 ? kExitOk : kExitMathFailure;
}

// --- reproduce-paper -------------------------------------------------------

/// Expected-vs-computed bookkeeping for the pinned fixtures.
class FixtureLog {
 public:
  explicit FixtureLog(std::ostream& out) : out_(out) {}

  void section(const std::string& title) { out_ << "== " << title << "\n"; }

  void check(const std::string& what, const std::string& expected, const std::string& computed) {
    const bool ok = expected == computed;
    if (!ok) ++mismatches_;
    out_ << (ok ? "  ok    " : "  DIFF  ") << what << ": expected " << expected << ", computed " << computed << "\n";
  }
  void check(const std::string& what, bool expected, bool computed) {
    check(what, std::string(expected ? "true" : "false"), std::string(computed ? "true" : "false"));
  }

  int mismatches() const noexcept { return mismatches_; }

 private:
  std::ostream& out_;
  int mismatches_ = 0;
};

struct CppFixture {
  u64 q;
  u64 delta;
  u64 k;
  u64 r;
  u64 delta_sq;
  u64 c_delta;
  std::array<u64, 3> tau;
  u64 v;          // constant value of v
  std::array<u64, 3> psi_bar;
};

inline void run_cpp_fixture(const CppFixture& fx, FixtureLog& log) {
  const FieldSpec f = make_field(fx.q, 1);
  const FieldElement delta = f.from_int(static_cast<std::int64_t>(fx.delta));
  const Mu3Context ctx = context_for_delta(f, delta);
  const auto t = build_delta_family(ctx, delta, 1 + fx.k * ctx.s);
  auto n = [&](FieldElement e) { return format_element(f, e); };
  auto triple = [&](const std::array<u64, 3>& a) {
    return "(" + std::to_string(a[0]) + ", " + std::to_string(a[1]) + ", " + std::to_string(a[2]) + ")";
  };
  log.check("s", std::to_string((fx.q - 1) / 3), std::to_string(ctx.s));
  log.check("r = 1 + k s", std::to_string(fx.r), std::to_string(t.r));
  log.check("delta^2 + delta + 1", "0", n(f.add(f.add(f.mul(delta, delta), delta), f.one())));
  log.check("delta^2", std::to_string(fx.delta_sq), n(f.mul(delta, delta)));
  log.check("c(delta)", std::to_string(fx.c_delta), n(t.c[1]));
  log.check("c(delta)^s", "1", n(f.pow(t.c[1], ctx.s)));
  const auto rep = scalar_cpp_check(t);
  log.check("tau", triple(fx.tau), elements_text(f, rep.tau));
  const std::string vv = std::to_string(fx.v);
  log.check("v", "(" + vv + ", " + vv + ", " + vv + ")", mu3_text(ctx, rep.v));
  log.check("psi_bar", triple(fx.psi_bar), mu3_text(ctx, rep.psi_bar));
  log.check("H1", true, rep.h1);
  log.check("H2", true, rep.h2);
  log.check("constant v", true, constant_v_check(rep).family_certified);
  const auto general = general_cpp_check(t);
  log.check("G1-G4", true, general.is_cpp());
  const auto oracle = check_pp_cpp(t);
  log.check("oracle: f is a PP", true, oracle.f_is_pp);
  log.check("oracle: F is a PP", true, oracle.F_is_pp);
}

inline int cmd_reproduce_paper(const CommandConfig& cfg, std::ostream& out) {
  FixtureLog log(out);
  auto want = [&](u64 q) { return !cfg.only || *cfg.only == q; };
  const bool corrupt = cfg.corrupt_fixture;
  bool any = false;

  const CppFixture cpp_fixtures[] = {
      {109, 63, 2, 73, 45, 27, {2, corrupt ? 18u : 17u, 64}, 1, {1, 63, 45}},
      {163, 58, 3, 163, 104, 150, {2, 151, 2}, 104, {104, 1, 58}},
      {199, 106, 3, 199, 92, 78, {2, 79, 2}, 106, {106, 92, 1}},
  };
  for (const auto& fx : cpp_fixtures) {
    if (!want(fx.q)) continue;
    any = true;
    log.section("CPP example over F_" + std::to_string(fx.q) + ", delta = " + std::to_string(fx.delta) +
                ", k = " + std::to_string(fx.k));
    run_cpp_fixture(fx, log);
  }

  if (want(7)) {
    any = true;
    log.section("Counterexample over F_7, delta = 2, r = 1");
    const FieldSpec f = make_field(7, 1);
    const FieldElement delta = f.from_int(2);
    const auto t = build_delta_family(context_for_delta(f, delta), delta, 1);
    log.check("delta^2 + 1", "5", format_element(f, f.add(f.mul(delta, delta), f.one())));
    log.check("F(X)", "X^5 + 2X^3 + 6X", format_polynomial(f, dense_coefficients_F(t)));
    for (int x : {0, 3, 4}) log.check("F(" + std::to_string(x) + ")", "0", format_element(f, eval_F(t, f.from_int(x))));
    const auto oracle = check_pp_cpp(t);
    log.check("oracle: F is a PP", false, oracle.F_is_pp);
    std::string pre;
    for (auto e : oracle.F.collision_preimages) pre += (pre.empty() ? "" : ",") + format_element(f, e);
    log.check("preimages of 0", "0,3,4", pre);
    const auto general = general_cpp_check(t);
    log.check("G1-G4 certify", false, general.is_cpp());
  }

  if (want(31)) {
    any = true;
    log.section("Counterexample over F_31, delta = 25, r = 7");
    const FieldSpec f = make_field(31, 1);
    const FieldElement delta = f.from_int(25);
    const Mu3Context ctx = context_for_delta(f, delta);
    const auto t = build_delta_family(ctx, delta, 7);
    auto n = [&](FieldElement e) { return format_element(f, e); };
    log.check("delta^2", "5", n(f.mul(delta, delta)));
    log.check("delta^2 + 1", "6", n(f.add(f.mul(delta, delta), f.one())));
    log.check("8^10", "1", n(f.pow(f.from_int(8), 10)));
    log.check("8^7", "2", n(f.pow(f.from_int(8), 7)));
    log.check("5^10", "5", n(f.pow(f.from_int(5), 10)));
    log.check("5^7", "5", n(f.pow(f.from_int(5), 7)));
    log.check("F(8)", "10", n(eval_F(t, f.from_int(8))));
    log.check("F(5)", "10", n(eval_F(t, f.from_int(5))));
    const auto oracle = check_pp_cpp(t);
    log.check("oracle: f is a PP", true, oracle.f_is_pp);
    log.check("oracle: F is a PP", false, oracle.F_is_pp);
    log.check("first collision", "F(5) = F(8) = 10",
              "F(" + n(oracle.F.collision->first) + ") = F(" + n(oracle.F.collision->second) + ") = " +
                  n(*oracle.F.collision_image));
    const auto general = general_cpp_check(t);
    std::string failed;
    const std::pair<const char*, const ConditionResult*> conds[] = {
        {"G1", &general.g1}, {"G2", &general.g2}, {"G3", &general.g3}, {"G4", &general.g4}};
    for (const auto& [name, c] : conds) {
      if (!c->pass) failed += (failed.empty() ? "" : ",") + std::string(name);
    }
    log.check("failed conditions", "G3,G4", failed);
  }

  struct Thm4Fixture {
    u64 p;
    u32 n;
    int item;
    u64 gamma;
  };
  const Thm4Fixture thm4[] = {{13, 1, 1, 6}, {5, 2, 3, 2}, {7, 3, 2, 2}};
  for (const auto& fx : thm4) {
    const FieldSpec f = make_field(fx.p, fx.n);
    if (!want(f.q())) continue;
    any = true;
    log.section("Specialised gamma family, item " + std::to_string(fx.item) + ", F_" + f.name());
    const FieldElement gamma = bbd4_gamma(fx.item, f);
    log.check("gamma", format_element(f, f.from_int(static_cast<std::int64_t>(fx.gamma))), format_element(f, gamma));
    const auto div = bbd4_divisibility(fx.item, f);
    log.check("divisibility (" + div.detail + ")", true, div.holds);
    const Mu3Context ctx = make_mu3(f);
    log.check("gamma hypothesis", true, bbd3_hypothesis(ctx, {Bbd3Variant::GammaForm, {}, gamma, 1}).holds);
    for (u64 r : seeded_units(f.q() - 1, 5, cfg.seed)) {
      const auto t = build_gamma_family(ctx, gamma, r);
      const bool pp = check_permutation(f, [&](FieldElement x) { return eval_f(t, x); }).is_bijection;
      log.check("oracle: f is a PP for r = " + std::to_string(r), true, pp);
    }
  }

  if (!any) throw UsageError("--only matches no fixture (use 109, 163, 199, 7, 31, 13, 25 or 343)");
  out << (log.mismatches() == 0 ? "all fixtures match\n" : std::to_string(log.mismatches()) + " mismatch(es)\n");
  return log.mismatches() == 0 ? kExitOk : kExitMathFailure;
}

}  // namespace detail

/// Dispatches one parsed command, mapping errors onto exit codes.
inline int run_command(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (cfg.out) {
    file.open(*cfg.out);
    if (!file) {
      err << "cannot open " << *cfg.out << "\n";
      return kExitUsage;
    }
    sink = &file;
  }
  try {
    if (cfg.command == "verify") return detail::cmd_verify(cfg, *sink);
    if (cfg.command == "certify") return detail::cmd_certify(cfg, *sink);
    if (cfg.command == "search") return detail::cmd_search(cfg, *sink);
    if (cfg.command == "census") return detail::cmd_census(cfg, *sink);
    if (cfg.command == "reproduce-paper") return detail::cmd_reproduce_paper(cfg, *sink);
    err << "unknown command '" << cfg.command << "'\n";
    return kExitUsage;
  } catch (const detail::UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.is_hypothesis_violation() ? kExitHypothesis : kExitUsage;
  }
}

/// Registers subcommands and flags on `app`, filling `cfg`.
inline void configure_cli(CLI::App& app, CommandConfig& cfg) {
  app.require_subcommand(1);
  auto common_shape = [&](CLI::App* sub) {
    sub->add_option("--field", cfg.field, "field order as p or p^n")->required();
    auto* d = sub->add_option("--delta", cfg.delta, "cube root of unity for the delta family");
    auto* g = sub->add_option("--gamma", cfg.gamma, "gamma for the gamma family");
    auto* c = sub->add_option("--c", cfg.c, "c(1), c(omega), c(omega^2)")->expected(3);
    d->excludes(g)->excludes(c);
    g->excludes(c);
    sub->add_option("--omega", cfg.omega, "orientation of mu3 (default: canonical, or delta)");
    auto* r = sub->add_option("--r", cfg.r, "exponent r");
    sub->add_option("--k", cfg.k, "scalar regime: r = 1 + k s")->excludes(r);
    sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", cfg.out, "write to file instead of stdout");
  };
  auto* verify = app.add_subcommand("verify", "criteria reports and oracle verdict for one trinomial");
  common_shape(verify);
  verify->add_flag("--pp-only", cfg.pp_only, "succeed when f alone permutes");
  auto* certify = app.add_subcommand("certify", "emit a certificate for one trinomial");
  common_shape(certify);

  auto* search = app.add_subcommand("search", "scalar-family certificates or counterexample scan");
  search->add_option("--field", cfg.field, "single field p or p^n");
  search->add_option("--q-min", cfg.q_min);
  search->add_option("--q-max", cfg.q_max);
  search->add_option("--k-max", cfg.k_max, "largest k (default 3)");
  search->add_flag("--failures", cfg.failures, "scan q = 1 mod 3, q != 1 mod 9 for failures of F");
  search->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  search->add_option("--out", cfg.out);

  auto* cen = app.add_subcommand("census", "per-q summary table");
  cen->add_option("--q-max", cfg.q_max)->required();
  cen->add_option("--k-max", cfg.k_max, "largest k (default 6)");
  cen->add_flag("--prime-powers", cfg.prime_powers, "include extension fields");
  cen->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cen->add_option("--threads", cfg.threads);
  cen->add_option("--out", cfg.out);
  cen->preparse_callback([&](std::size_t) { cfg.format = "csv"; });

  auto* repro = app.add_subcommand("reproduce-paper", "check every pinned example and counterexample");
  repro->add_option("--only", cfg.only, "run only the fixture for this q");
  repro->add_flag("--corrupt-fixture", cfg.corrupt_fixture, "test mode: perturb one expected value");
  repro->add_option("--out", cfg.out);

  for (auto* sub : {verify, certify, search, cen, repro}) sub->add_option("--seed", cfg.seed, "sampling seed");
  app.final_callback([&] {
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  });
}

/// Full entry point: parse argv then run.
inline int run_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Index-3 complete permutation trinomials: criteria, oracle and search"};
  CommandConfig cfg;
  configure_cli(app, cfg);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    app.exit(e, os, os);
    err << os.str();
    return kExitUsage;
  }
  return run_command(cfg, out, err);
}

}  // namespace mu3

#endif  // MU3CPP_APP_HPP
