#ifndef MU3CPP_CRITERIA_HPP
#define MU3CPP_CRITERIA_HPP

// Sufficient-condition checkers.  None of these evaluate f or F on the whole
// field; agreement with the exhaustive oracle is established by tests only.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oracle.hpp"
#include "trinomial.hpp"

namespace mu3 {

// ---------------------------------------------------------------------------
// Zieve: X^r h(X^((q-1)/d)) permutes F_q iff gcd(r, (q-1)/d) = 1 and
// u -> u^r h(u)^((q-1)/d) permutes mu_d.

struct ZieveInput {
  FieldSpec spec;
  u64 d = 3;
  u64 r = 1;
  /// h on mu_d, listed as h(1), h(zeta), h(zeta^2), ...
  std::vector<FieldElement> h_values;
  /// Generator of mu_d fixing that order; smallest-rank generator if unset.
  std::optional<FieldElement> zeta;
};

struct ZieveResult {
  bool is_pp = false;
  bool gcd_ok = false;
  bool h_nonzero = false;
  bool images_distinct = false;
  std::vector<FieldElement> mu_d;
  std::vector<FieldElement> mu_d_image;
};

/// True when u has multiplicative order exactly d.
inline bool has_order(const FieldSpec& f, FieldElement u, u64 d) {
  if (u.is_zero() || f.pow(u, d) != f.one()) return false;
  for (u64 l : prime_factors(d)) {
    if (f.pow(u, d / l) == f.one()) return false;
  }
  return true;
}

/// Smallest-rank generator of mu_d; requires d | q-1.
inline FieldElement mu_d_generator(const FieldSpec& f, u64 d) {
  if (d == 1) return f.one();
  const u64 e = (f.q() - 1) / d;
  for (u64 x = 2; x < f.q(); ++x) {
    const FieldElement y = f.pow(f.from_rank(x), e);
    if (!has_order(f, y, d)) continue;
    // Every generator is y^j with gcd(j, d) = 1.
    FieldElement best = y;
    FieldElement cur = y;
    for (u64 j = 2; j < d; ++j) {
      cur = f.mul(cur, y);
      if (gcd(j, d) == 1 && cur < best) best = cur;
    }
    return best;
  }
  std::terminate();  // mu_d is cyclic of order d when d | q-1
}

inline ZieveResult zieve_check(const ZieveInput& in) {
  const FieldSpec& f = in.spec;
  const u64 q = f.q();
  if (in.d == 0 || (q - 1) % in.d != 0) {
    throw Error(ErrorCode::DNotDividing, "d=" + std::to_string(in.d) + " does not divide q-1=" + std::to_string(q - 1));
  }
  if (in.h_values.size() != in.d) throw Error(ErrorCode::InvalidArgument, "need exactly d h-values");
  for (auto h : in.h_values) {
    if (!f.contains(h)) throw Error(ErrorCode::FieldMismatch, "h value outside F_" + f.name());
  }
  const u64 e = (q - 1) / in.d;
  FieldElement zeta = in.zeta ? *in.zeta : mu_d_generator(f, in.d);
  if (!f.contains(zeta) || !has_order(f, zeta, in.d)) {
    throw Error(ErrorCode::InvalidArgument, "zeta does not generate mu_d");
  }

  ZieveResult out;
  out.gcd_ok = gcd(in.r, e) == 1;
  out.h_nonzero = std::none_of(in.h_values.begin(), in.h_values.end(), [](FieldElement h) { return h.is_zero(); });
  FieldElement u = f.one();
  for (u64 i = 0; i < in.d; ++i) {
    out.mu_d.push_back(u);
    out.mu_d_image.push_back(f.mul(f.pow(u, in.r), f.pow(in.h_values[i], e)));
    u = f.mul(u, zeta);
  }
  std::vector<FieldElement> sorted = out.mu_d_image;
  std::sort(sorted.begin(), sorted.end());
  const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  // An h-value of 0 sends a whole coset to 0; the images are then not all in mu_d.
  out.images_distinct = distinct && out.h_nonzero;
  out.is_pp = out.gcd_ok && out.h_nonzero && out.images_distinct;
  return out;
}

inline ZieveInput zieve_input_for(const CycloTrinomial& t) {
  return {t.spec(), 3, t.r, {t.c.begin(), t.c.end()}, t.ctx.omega};
}

// ---------------------------------------------------------------------------
// AGW: with lambda_bar o g = g_bar o lambda and both projections surjective,
// g is bijective iff g_bar is bijective and g is injective on every fiber of
// lambda.

struct AgwData {
  std::size_t a_size = 0;
  std::size_t s_size = 0;
  std::vector<std::size_t> g_map;           // A -> A
  std::vector<std::size_t> lambda_map;      // A -> S
  std::vector<std::size_t> lambda_bar_map;  // A -> S_bar
  std::vector<std::size_t> g_bar_map;       // S -> S_bar
};

struct AgwReport {
  bool commutes = false;
  bool surjective = false;
  /// Side (i).
  bool g_bijective = false;
  /// Side (ii).
  bool gbar_bijective_and_fibers_injective = false;
  /// Both sides equal; only meaningful when commutes && surjective.
  bool sides_agree = false;
};

namespace detail {
inline bool is_bijection(const std::vector<std::size_t>& map, std::size_t size) {
  std::vector<bool> hit(size, false);
  for (auto y : map) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return map.size() == size;
}
inline bool is_surjective(const std::vector<std::size_t>& map, std::size_t size) {
  std::vector<bool> hit(size, false);
  for (auto y : map) hit[y] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}
}  // namespace detail

inline AgwReport agw_check(const AgwData& a) {
  auto in_range = [](const std::vector<std::size_t>& m, std::size_t len, std::size_t bound) {
    return m.size() == len && std::all_of(m.begin(), m.end(), [&](std::size_t v) { return v < bound; });
  };
  if (!in_range(a.g_map, a.a_size, a.a_size) || !in_range(a.lambda_map, a.a_size, a.s_size) ||
      !in_range(a.lambda_bar_map, a.a_size, a.s_size) || !in_range(a.g_bar_map, a.s_size, a.s_size)) {
    throw Error(ErrorCode::MalformedTable, "AGW tables must be total and in range");
  }
  AgwReport out;
  out.commutes = true;
  for (std::size_t x = 0; x < a.a_size; ++x) {
    if (a.lambda_bar_map[a.g_map[x]] != a.g_bar_map[a.lambda_map[x]]) {
      out.commutes = false;
      break;
    }
  }
  out.surjective = detail::is_surjective(a.lambda_map, a.s_size) && detail::is_surjective(a.lambda_bar_map, a.s_size);
  out.g_bijective = detail::is_bijection(a.g_map, a.a_size);

  std::vector<std::pair<std::size_t, std::size_t>> labelled(a.a_size);  // (fiber, image)
  for (std::size_t x = 0; x < a.a_size; ++x) labelled[x] = {a.lambda_map[x], a.g_map[x]};
  std::sort(labelled.begin(), labelled.end());
  const bool fibers_injective = std::adjacent_find(labelled.begin(), labelled.end()) == labelled.end();
  out.gbar_bijective_and_fibers_injective = detail::is_bijection(a.g_bar_map, a.s_size) && fibers_injective;
  out.sides_agree = out.g_bijective == out.gbar_bijective_and_fibers_injective;
  return out;
}

/// Label of x for the AGW bridge: projection index for x != 0, 3 for zero.
inline std::size_t fiber_label(const Mu3Context& ctx, FieldElement x) {
  return x.is_zero() ? 3 : static_cast<std::size_t>(project(ctx, x));
}

/// Fiber map induced by F on a representative of each fiber.
inline std::array<std::size_t, 3> induced_fiber_map(const CycloTrinomial& t) {
  std::array<std::size_t, 3> out{};
  std::array<bool, 3> found{};
  for (u64 x = 1; x < t.spec().q(); ++x) {
    const FieldElement e = t.spec().from_rank(x);
    const int u = project(t.ctx, e);
    if (found[u]) continue;
    found[u] = true;
    out[u] = fiber_label(t.ctx, eval_F(t, e));
    if (found[0] && found[1] && found[2]) break;
  }
  return out;
}

/// AGW data for g = F on A = F_q with lambda = lambda_bar = fiber_label, so
/// S = mu3 plus a singleton label for 0 (g_bar fixes it).  Images of F that
/// fall on 0 from a nonzero fiber then break commutation instead of leaving A.
inline AgwData agw_data_for(const CycloTrinomial& t, const std::array<std::size_t, 3>& g_bar) {
  const u64 q = t.spec().q();
  AgwData a;
  a.a_size = q;
  a.s_size = 4;
  a.g_map.resize(q);
  a.lambda_map.resize(q);
  for (u64 x = 0; x < q; ++x) {
    const FieldElement e = t.spec().from_rank(x);
    a.g_map[x] = eval_F(t, e).rank();
    a.lambda_map[x] = fiber_label(t.ctx, e);
  }
  a.lambda_bar_map = a.lambda_map;
  a.g_bar_map = {g_bar[0], g_bar[1], g_bar[2], 3};
  return a;
}

// ---------------------------------------------------------------------------
// Hypotheses of the delta/gamma trinomial families.

struct HypothesisResult {
  bool holds = false;
  FieldElement witness;
};

/// Delta form: (3 delta^2 + 1)^s = 1.  Gamma form: ((gamma+2)/(gamma-1))^s = 1.
inline HypothesisResult bbd3_hypothesis(const Mu3Context& ctx, const Bbd3Params& params) {
  const FieldSpec& f = ctx.spec;
  HypothesisResult out;
  if (params.variant == Bbd3Variant::DeltaForm) {
    if (!f.contains(params.delta) || !ctx.index_of(params.delta)) {
      throw Error(ErrorCode::DeltaNotInMu3, "delta is not a cube root of unity");
    }
    out.witness = f.add(f.mul(f.from_int(3), f.mul(params.delta, params.delta)), f.one());
  } else {
    if (params.gamma == f.one() || params.gamma == f.from_int(-2)) {
      throw Error(ErrorCode::GammaDegenerate, "gamma must avoid 1 and -2");
    }
    out.witness = f.div(f.add(params.gamma, f.from_int(2)), f.sub(params.gamma, f.one()));
  }
  out.holds = f.pow(out.witness, ctx.s) == f.one();
  return out;
}

struct DivisibilityResult {
  bool holds = false;
  std::string detail;
};

/// Item 1: s is even.  Items 2 and 3: (p-1) | s.
inline DivisibilityResult bbd4_divisibility(int item, const FieldSpec& spec) {
  (void)bbd4_gamma(item, spec);  // validates the item's hypotheses
  const u64 s = (spec.q() - 1) / 3;
  DivisibilityResult out;
  if (item == 1) {
    out.holds = s % 2 == 0;
    out.detail = "s=" + std::to_string(s) + (out.holds ? " is even" : " is odd");
  } else {
    const u64 pm1 = spec.p() - 1;
    out.holds = s % pm1 == 0;
    out.detail = "s=" + std::to_string(s) + ", p-1=" + std::to_string(pm1) +
                 (out.holds ? " divides s" : " does not divide s");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Complete-permutation criteria.

struct ConditionResult {
  bool pass = false;
  std::string detail;
};

using Mu3Index = std::optional<int>;
using Mu3Triple = std::array<Mu3Index, 3>;

/// psi_bar(u) = u * v(u) on indices; undefined wherever v is.
inline Mu3Triple psi_bar_of(const Mu3Triple& v) {
  Mu3Triple out;
  for (int i = 0; i < 3; ++i) {
    if (v[i]) out[i] = (i + *v[i]) % 3;
  }
  return out;
}

inline bool is_mu3_permutation(const Mu3Triple& m) {
  if (!m[0] || !m[1] || !m[2]) return false;
  return *m[0] != *m[1] && *m[0] != *m[2] && *m[1] != *m[2];
}

struct GeneralReport {
  ConditionResult g1, g2, g3, g4;
  std::array<FieldElement, 3> representative;
  std::array<FieldElement, 3> beta;
  Mu3Triple v;
  Mu3Triple psi_bar;
  /// G2 diagnostics per fiber: a colliding pair, or a z with phi_u(z) = 0.
  std::array<std::optional<std::pair<FieldElement, FieldElement>>, 3> g2_collision;
  std::array<std::optional<FieldElement>, 3> g2_zero;
  /// G3 diagnostics per fiber: a z whose value differs from the one at z = 1.
  std::array<std::optional<FieldElement>, 3> g3_witness;

  bool is_cpp() const noexcept { return g1.pass && g2.pass && g3.pass && g4.pass; }
};

/// Smallest-rank element of each fiber.
inline std::array<FieldElement, 3> canonical_representatives(const Mu3Context& ctx) {
  std::array<FieldElement, 3> reps;
  std::array<bool, 3> found{};
  for (u64 x = 1; x < ctx.spec.q(); ++x) {
    const FieldElement e = ctx.spec.from_rank(x);
    const int u = project(ctx, e);
    if (!found[u]) {
      reps[u] = e;
      found[u] = true;
      if (found[0] && found[1] && found[2]) break;
    }
  }
  return reps;
}

/// G1-G4 with explicit fiber representatives (reps[i] must project to i).
/// `kernel` is the fiber over 1; pass it in to reuse across calls.
inline GeneralReport general_cpp_check(const CycloTrinomial& t, const std::array<FieldElement, 3>& reps,
                                       const std::vector<FieldElement>& kernel) {
  const Mu3Context& ctx = t.ctx;
  const FieldSpec& f = ctx.spec;
  if (!t.c_nonzero()) throw Error(ErrorCode::ZeroCValue, "c must be nonzero on mu3");
  for (int i = 0; i < 3; ++i) {
    if (!f.contains(reps[i]) || reps[i].is_zero() || project(ctx, reps[i]) != i) {
      throw Error(ErrorCode::InvalidArgument, "representative does not lie in its fiber");
    }
  }

  GeneralReport rep;
  rep.representative = reps;

  // G1
  {
    const bool gcd_s = gcd(t.r, ctx.s) == 1;
    const bool gcd_3 = gcd(t.r, 3) == 1;
    int bad_c = -1;
    for (int i = 0; i < 3 && bad_c < 0; ++i) {
      if (f.pow(t.c[i], ctx.s) != f.one()) bad_c = i;
    }
    rep.g1.pass = gcd_s && gcd_3 && bad_c < 0;
    if (!gcd_s) rep.g1.detail = "gcd(r, s) = " + std::to_string(gcd(t.r, ctx.s));
    else if (!gcd_3) rep.g1.detail = "gcd(r, 3) = 3";
    else if (bad_c >= 0) rep.g1.detail = "c(u)^s != 1 at u = " + format_element(f, ctx.mu3[bad_c]);
  }

  const u64 order = f.q() - 1;
  const u64 rm1 = (t.r - 1) % order;
  for (int i = 0; i < 3; ++i) rep.beta[i] = f.mul(t.c[i], f.pow(reps[i], rm1));
  std::vector<FieldElement> kernel_pow;  // z^(r-1), shared by G2 and G3
  kernel_pow.reserve(kernel.size());
  for (auto z : kernel) kernel_pow.push_back(f.pow(z, rm1));

  // G2: phi_u(z) = z (1 + beta_u z^(r-1)) injective on K, never 0.
  rep.g2.pass = true;
  for (int i = 0; i < 3; ++i) {
    OccupancyBitset seen(f.q());
    for (std::size_t j = 0; j < kernel.size(); ++j) {
      const FieldElement phi = f.mul(kernel[j], f.add(f.one(), f.mul(rep.beta[i], kernel_pow[j])));
      if (phi.is_zero()) {
        rep.g2_zero[i] = kernel[j];
        break;
      }
      if (seen.test_and_set(phi.rank())) {
        for (std::size_t k = 0; k < j; ++k) {
          const FieldElement other = f.mul(kernel[k], f.add(f.one(), f.mul(rep.beta[i], kernel_pow[k])));
          if (other == phi) {
            rep.g2_collision[i] = std::make_pair(kernel[k], kernel[j]);
            break;
          }
        }
        break;
      }
    }
    if (rep.g2_zero[i] || rep.g2_collision[i]) {
      if (rep.g2.pass) {
        rep.g2.detail = "fiber " + format_element(f, ctx.mu3[i]) + ": " +
                        (rep.g2_zero[i] ? "phi(" + format_element(f, *rep.g2_zero[i]) + ") = 0"
                                        : "phi(" + format_element(f, rep.g2_collision[i]->first) + ") = phi(" +
                                              format_element(f, rep.g2_collision[i]->second) + ")");
      }
      rep.g2.pass = false;
    }
  }

  // G3: (1 + beta_u z^(r-1))^s constant over K and in mu3.
  rep.g3.pass = true;
  for (int i = 0; i < 3; ++i) {
    std::optional<FieldElement> first;
    bool ok = true;
    for (std::size_t j = 0; j < kernel.size(); ++j) {
      const FieldElement w = f.pow(f.add(f.one(), f.mul(rep.beta[i], kernel_pow[j])), ctx.s);
      if (!first) {
        first = w;
        if (!ctx.index_of(w)) {
          rep.g3_witness[i] = kernel[j];
          ok = false;
          break;
        }
      } else if (w != *first) {
        rep.g3_witness[i] = kernel[j];
        ok = false;
        break;
      }
    }
    if (ok && first) rep.v[i] = ctx.index_of(*first);
    if (!ok) {
      if (rep.g3.pass) {
        rep.g3.detail = "fiber " + format_element(f, ctx.mu3[i]) + ": value at z = " +
                        format_element(f, *rep.g3_witness[i]) + " deviates or leaves mu3";
      }
      rep.g3.pass = false;
    }
  }

  // G4
  rep.psi_bar = psi_bar_of(rep.v);
  rep.g4.pass = is_mu3_permutation(rep.psi_bar);
  if (!rep.g4.pass) rep.g4.detail = rep.g3.pass ? "psi_bar is not a permutation of mu3" : "v undefined (G3 failed)";
  return rep;
}

inline GeneralReport general_cpp_check(const CycloTrinomial& t) {
  if (!t.c_nonzero()) throw Error(ErrorCode::ZeroCValue, "c must be nonzero on mu3");
  return general_cpp_check(t, canonical_representatives(t.ctx), kernel_elements(t.ctx));
}

struct ScalarReport {
  u64 k = 0;
  std::array<FieldElement, 3> tau;
  Mu3Triple v;
  Mu3Triple psi_bar;
  bool psi_bar_is_permutation = false;
  bool h1 = false;
  bool h2 = false;

  bool is_cpp() const noexcept { return h1 && h2; }
};

/// Scalar regime r = 1 + k s: F acts on the fiber over u as multiplication by
/// tau(u) = 1 + c(u) u^k.
inline ScalarReport scalar_cpp_check(const CycloTrinomial& t) {
  const Mu3Context& ctx = t.ctx;
  const FieldSpec& f = ctx.spec;
  if (f.q() % 9 != 1) throw Error(ErrorCode::NotOneModNine, "q=" + std::to_string(f.q()) + " is not 1 mod 9");
  if ((t.r - 1) % ctx.s != 0) {
    throw Error(ErrorCode::RNotScalarForm, "r=" + std::to_string(t.r) + " is not 1 mod s=" + std::to_string(ctx.s));
  }
  for (int i = 0; i < 3; ++i) {
    if (f.pow(t.c[i], ctx.s) != f.one()) {
      throw Error(ErrorCode::CNotKernelValued, "c(u)^s != 1 at u = " + format_element(f, ctx.mu3[i]));
    }
  }
  ScalarReport rep;
  rep.k = (t.r - 1) / ctx.s;
  rep.h1 = true;
  for (int i = 0; i < 3; ++i) {
    rep.tau[i] = f.add(f.one(), f.mul(t.c[i], f.pow(ctx.mu3[i], rep.k)));
    if (rep.tau[i].is_zero()) rep.h1 = false;
    rep.v[i] = ctx.index_of(f.pow(rep.tau[i], ctx.s));
  }
  rep.psi_bar = psi_bar_of(rep.v);
  rep.psi_bar_is_permutation = is_mu3_permutation(rep.psi_bar);
  rep.h2 = rep.psi_bar_is_permutation;
  return rep;
}

struct ConstantVResult {
  bool family_certified = false;
  Mu3Index alpha;
};

/// Certified iff v takes one value on all of mu3.
inline ConstantVResult constant_v_check(const ScalarReport& report) {
  ConstantVResult out;
  if (report.v[0] && report.v[0] == report.v[1] && report.v[1] == report.v[2]) {
    out.family_certified = true;
    out.alpha = report.v[0];
  }
  return out;
}

}  // namespace mu3

#endif  // MU3CPP_CRITERIA_HPP
