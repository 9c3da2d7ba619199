#ifndef MU3CPP_SERIALIZE_HPP
#define MU3CPP_SERIALIZE_HPP

// JSON (nlohmann) and CSV encodings.  Elements use format_element; mu3-valued
// quantities (v, psi_bar) are written as the field elements they index, null
// where undefined.

#include <string>

#include <json.hpp>

#include "criteria.hpp"
#include "search.hpp"

namespace mu3 {

using json = nlohmann::json;

inline json element_json(const FieldSpec& f, FieldElement e) { return format_element(f, e); }

inline FieldElement element_from_json(const FieldSpec& f, const json& j) {
  if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
  if (j.is_string()) return parse_element(f, j.get<std::string>());
  throw Error(ErrorCode::ParseError, "element must be a string or integer");
}

template <std::size_t N>
json elements_json(const FieldSpec& f, const std::array<FieldElement, N>& a) {
  json out = json::array();
  for (auto e : a) out.push_back(element_json(f, e));
  return out;
}

inline json mu3_triple_json(const Mu3Context& ctx, const Mu3Triple& t) {
  json out = json::array();
  for (auto idx : t) out.push_back(idx ? element_json(ctx.spec, ctx.mu3[*idx]) : json(nullptr));
  return out;
}

inline json field_json(const FieldSpec& f) {
  json j{{"field", f.name()}, {"q", f.q()}, {"p", f.p()}, {"n", f.n()}};
  if (!f.is_prime_field()) j["modulus"] = f.modulus();
  return j;
}

/// {"q", "r", "c"} plus the field string and omega fixing the order of c.
inline json trinomial_json(const CycloTrinomial& t) {
  return {{"field", t.spec().name()},
          {"q", t.spec().q()},
          {"r", t.r},
          {"omega", element_json(t.spec(), t.ctx.omega)},
          {"c", elements_json(t.spec(), t.c)}};
}

inline CycloTrinomial trinomial_from_json(const json& j) {
  try {
    FieldSpec f = [&] {
      if (j.contains("field")) return parse_field(j.at("field").get<std::string>());
      const auto pp = prime_power(j.at("q").get<u64>());
      if (!pp) throw Error(ErrorCode::ParseError, "q is not a prime power");
      return make_field(pp->p, pp->n);
    }();
    if (j.contains("q") && j.at("q").get<u64>() != f.q()) throw Error(ErrorCode::ParseError, "q disagrees with field");
    std::optional<FieldElement> omega;
    if (j.contains("omega")) omega = element_from_json(f, j.at("omega"));
    const Mu3Context ctx = make_mu3(f, omega);
    const auto& cj = j.at("c");
    if (!cj.is_array() || cj.size() != 3) throw Error(ErrorCode::ParseError, "c must have three entries");
    return make_trinomial(ctx, j.at("r").get<u64>(),
                          {element_from_json(f, cj[0]), element_from_json(f, cj[1]), element_from_json(f, cj[2])});
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline json general_report_json(const Mu3Context& ctx, const GeneralReport& rep) {
  const FieldSpec& f = ctx.spec;
  json diag = json::object();
  const std::pair<const char*, const ConditionResult*> conds[] = {
      {"g1", &rep.g1}, {"g2", &rep.g2}, {"g3", &rep.g3}, {"g4", &rep.g4}};
  for (const auto& [name, c] : conds) {
    if (!c->pass) diag[name] = c->detail;
  }
  json collisions = json::array();
  for (int i = 0; i < 3; ++i) {
    if (rep.g2_collision[i]) {
      collisions.push_back({{"u", element_json(f, ctx.mu3[i])},
                            {"z1", element_json(f, rep.g2_collision[i]->first)},
                            {"z2", element_json(f, rep.g2_collision[i]->second)}});
    }
  }
  if (!collisions.empty()) diag["g2_collisions"] = collisions;
  return {{"g1", rep.g1.pass},
          {"g2", rep.g2.pass},
          {"g3", rep.g3.pass},
          {"g4", rep.g4.pass},
          {"beta", elements_json(f, rep.beta)},
          {"v", mu3_triple_json(ctx, rep.v)},
          {"psi_bar", mu3_triple_json(ctx, rep.psi_bar)},
          {"diagnostics", diag}};
}

inline json scalar_report_json(const Mu3Context& ctx, const ScalarReport& rep) {
  return {{"k", rep.k},
          {"tau", elements_json(ctx.spec, rep.tau)},
          {"v", mu3_triple_json(ctx, rep.v)},
          {"h1", rep.h1},
          {"h2", rep.h2}};
}

inline json verdict_json(const FieldSpec& f, const BijectionVerdict& v) {
  json j{{"is_bijection", v.is_bijection}};
  if (v.collision) {
    j["collision"] = {element_json(f, v.collision->first), element_json(f, v.collision->second)};
    j["image"] = element_json(f, *v.collision_image);
    json pre = json::array();
    for (auto e : v.collision_preimages) pre.push_back(element_json(f, e));
    j["preimages"] = pre;
  }
  if (v.missed) j["missed"] = element_json(f, *v.missed);
  return j;
}

inline Mu3Context certificate_context(const Certificate& c) { return make_mu3(c.spec, c.omega); }

inline json certificate_json(const Certificate& c) {
  const Mu3Context ctx = certificate_context(c);
  const FieldSpec& f = c.spec;
  json checks = json::object();
  for (const auto& [name, ok] : c.checks) checks[name] = ok;
  json j = field_json(f);
  j.update({{"omega", element_json(f, c.omega)},
            {"delta", element_json(f, c.delta)},
            {"k", c.k ? json(*c.k) : json(nullptr)},
            {"r", c.r},
            {"c", elements_json(f, c.c)},
            {"tau", c.tau ? elements_json(f, *c.tau) : json(nullptr)},
            {"v", mu3_triple_json(ctx, c.v)},
            {"psi_bar", mu3_triple_json(ctx, c.psi_bar)},
            {"criterion", c.criterion == Criterion::Scalar ? "scalar" : "general"},
            {"checks", checks},
            {"f_is_pp", c.f_is_pp},
            {"F_is_pp", c.F_is_pp},
            {"oracle_confirmed", c.oracle_confirmed}});
  return j;
}

/// The trinomial a certificate speaks about.
inline CycloTrinomial certificate_trinomial(const json& j) { return trinomial_from_json(j); }

inline json failure_json(const FailureRecord& rec) {
  const FieldSpec& f = rec.spec;
  json pre = json::array();
  for (auto e : rec.preimages) pre.push_back(element_json(f, e));
  json j = field_json(f);
  j.update({{"delta", element_json(f, rec.delta)},
            {"r", rec.r},
            {"x1", element_json(f, rec.x1)},
            {"x2", element_json(f, rec.x2)},
            {"image", element_json(f, rec.image)},
            {"preimages", pre},
            {"reason", std::string(to_string(rec.reason))}});
  return j;
}

inline constexpr const char* kCensusHeader = "q,p,n,s,admissible_delta,scalar_certified,oracle_cpp,discrepancies";

inline std::string census_csv_row(const CensusRow& r) {
  return std::to_string(r.q) + "," + std::to_string(r.p) + "," + std::to_string(r.n) + "," + std::to_string(r.s) +
         "," + std::to_string(r.admissible_delta) + "," + std::to_string(r.scalar_certified) + "," +
         std::to_string(r.oracle_cpp) + "," + std::to_string(r.discrepancies);
}

}  // namespace mu3

#endif  // MU3CPP_SERIALIZE_HPP
