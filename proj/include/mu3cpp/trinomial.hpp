#ifndef MU3CPP_TRINOMIAL_HPP
#define MU3CPP_TRINOMIAL_HPP

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "mu3.hpp"

namespace mu3 {

/// f(X) = X^r * c(X^s) with c given by its values on mu3, in the order of
/// ctx.mu3.  r is kept as given; evaluation reduces it on F_q^*.
struct CycloTrinomial {
  Mu3Context ctx;
  u64 r = 1;
  std::array<FieldElement, 3> c;

  const FieldSpec& spec() const noexcept { return ctx.spec; }
  bool c_nonzero() const noexcept {
    return std::none_of(c.begin(), c.end(), [](FieldElement e) { return e.is_zero(); });
  }
};

inline CycloTrinomial make_trinomial(const Mu3Context& ctx, u64 r, std::array<FieldElement, 3> c) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "r must be >= 1");
  for (auto e : c) {
    if (!ctx.spec.contains(e)) throw Error(ErrorCode::FieldMismatch, "c value outside F_" + ctx.spec.name());
  }
  return {ctx, r, c};
}

enum class Bbd3Variant { DeltaForm, GammaForm };

/// Parameters of the two trinomial families X^r(X^2s + delta X^s + delta^2 + 1)
/// and X^r(X^2s + X^s + gamma).
struct Bbd3Params {
  Bbd3Variant variant = Bbd3Variant::DeltaForm;
  FieldElement delta;
  FieldElement gamma;
  u64 r = 1;
};

inline FieldElement eval_f(const CycloTrinomial& t, FieldElement x) {
  const FieldSpec& f = t.spec();
  if (x.is_zero()) return f.zero();
  const u64 e = t.r % (f.q() - 1);
  return f.mul(f.pow(x, e), t.c[project(t.ctx, x)]);
}

inline FieldElement eval_F(const CycloTrinomial& t, FieldElement x) {
  return t.spec().add(eval_f(t, x), x);
}

/// c(u) = u^2 + delta u + delta^2 + 1 on mu3.
inline CycloTrinomial build_delta_family(const Mu3Context& ctx, FieldElement delta, u64 r) {
  const FieldSpec& f = ctx.spec;
  if (!f.contains(delta) || !ctx.index_of(delta)) {
    throw Error(ErrorCode::DeltaNotInMu3, "delta is not a cube root of unity in F_" + f.name());
  }
  const FieldElement tail = f.add(f.mul(delta, delta), f.one());
  std::array<FieldElement, 3> c;
  for (int i = 0; i < 3; ++i) {
    const FieldElement u = ctx.mu3[i];
    c[i] = f.add(f.add(f.mul(u, u), f.mul(delta, u)), tail);
  }
  return make_trinomial(ctx, r, c);
}

/// c(u) = u^2 + u + gamma on mu3, i.e. [gamma+2, gamma-1, gamma-1].
inline CycloTrinomial build_gamma_family(const Mu3Context& ctx, FieldElement gamma, u64 r) {
  const FieldSpec& f = ctx.spec;
  if (!f.contains(gamma)) throw Error(ErrorCode::FieldMismatch, "gamma outside F_" + f.name());
  if (gamma == f.one() || gamma == f.from_int(-2)) {
    throw Error(ErrorCode::GammaDegenerate, "gamma must avoid 1 and -2");
  }
  std::array<FieldElement, 3> c;
  for (int i = 0; i < 3; ++i) {
    const FieldElement u = ctx.mu3[i];
    c[i] = f.add(f.add(f.mul(u, u), u), gamma);
  }
  return make_trinomial(ctx, r, c);
}

inline CycloTrinomial build_family(const Mu3Context& ctx, const Bbd3Params& params) {
  return params.variant == Bbd3Variant::DeltaForm ? build_delta_family(ctx, params.delta, params.r)
                                                   : build_gamma_family(ctx, params.gamma, params.r);
}

/// gamma for the three specialised families: (p-1)/2 for item 1, 2 for items
/// 2 and 3.  Throws HypothesisViolated when the item's field conditions fail.
inline FieldElement bbd4_gamma(int item, const FieldSpec& spec) {
  const u64 p = spec.p(), n = spec.n(), q = spec.q();
  auto violated = [&](const std::string& why) {
    return Error(ErrorCode::HypothesisViolated, "item " + std::to_string(item) + ": " + why);
  };
  switch (item) {
    case 1:
      if (q % 6 != 1) throw violated("requires q = 1 mod 6");
      return spec.from_int(static_cast<std::int64_t>((p - 1) / 2));
    case 2:
      if (p % 3 != 1) throw violated("requires p = 1 mod 3");
      if (n % 3 != 0) throw violated("requires n = 0 mod 3");
      return spec.from_int(2);
    case 3:
      if (p < 5) throw violated("requires p >= 5");
      if (p % 3 != 2) throw violated("requires p = -1 mod 3");
      if (n % 2 != 0) throw violated("requires n even");
      return spec.from_int(2);
    default:
      throw Error(ErrorCode::InvalidArgument, "item must be 1, 2 or 3");
  }
}

using SparseTerm = std::pair<u64, FieldElement>;

/// Coefficients of h(X) = a0 + a1 X + a2 X^2 with h(mu3[i]) = c[i]
/// (inverse DFT over mu3; 3 is invertible since p != 3).
inline std::array<FieldElement, 3> interpolate_on_mu3(const Mu3Context& ctx, const std::array<FieldElement, 3>& c) {
  const FieldSpec& f = ctx.spec;
  const FieldElement third = f.inv(f.from_int(3));
  std::array<FieldElement, 3> a;
  for (int j = 0; j < 3; ++j) {
    FieldElement acc = f.zero();
    for (int i = 0; i < 3; ++i) {
      // omega^(-ij) = mu3[(-i*j) mod 3]
      acc = f.add(acc, f.mul(c[i], ctx.mu3[(3 - (i * j) % 3) % 3]));
    }
    a[j] = f.mul(acc, third);
  }
  return a;
}

/// f as an actual polynomial: nonzero terms among X^r, X^(r+s), X^(r+2s),
/// exponents unreduced, ascending.
inline std::vector<SparseTerm> dense_coefficients(const CycloTrinomial& t) {
  const auto a = interpolate_on_mu3(t.ctx, t.c);
  std::vector<SparseTerm> out;
  for (int j = 0; j < 3; ++j) {
    if (!a[j].is_zero()) out.emplace_back(t.r + j * t.ctx.s, a[j]);
  }
  return out;
}

/// F = f + X in the same form.
inline std::vector<SparseTerm> dense_coefficients_F(const CycloTrinomial& t) {
  const FieldSpec& f = t.spec();
  auto terms = dense_coefficients(t);
  auto it = std::find_if(terms.begin(), terms.end(), [](const SparseTerm& term) { return term.first == 1; });
  if (it != terms.end()) {
    it->second = f.add(it->second, f.one());
    if (it->second.is_zero()) terms.erase(it);
  } else {
    terms.emplace_back(1, f.one());
  }
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return terms;
}

/// Direct evaluation of a sparse polynomial, independent of the mu3 projection.
inline FieldElement eval_sparse(const FieldSpec& f, const std::vector<SparseTerm>& terms, FieldElement x) {
  FieldElement acc = f.zero();
  for (const auto& [e, coeff] : terms) acc = f.add(acc, f.mul(coeff, f.pow(x, e)));
  return acc;
}

/// "X^5 + 2X^3 + 6X", highest degree first.
inline std::string format_polynomial(const FieldSpec& f, std::vector<SparseTerm> terms) {
  if (terms.empty()) return "0";
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  std::string out;
  for (const auto& [e, coeff] : terms) {
    if (!out.empty()) out += " + ";
    const bool unit = coeff == f.one();
    std::string cs = format_element(f, coeff);
    if (!f.is_prime_field()) cs = "(" + cs + ")";
    if (e == 0) {
      out += cs;
      continue;
    }
    if (!unit) out += cs;
    out += "X";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace mu3

#endif  // MU3CPP_TRINOMIAL_HPP
