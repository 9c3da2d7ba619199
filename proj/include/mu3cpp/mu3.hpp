#ifndef MU3CPP_MU3_HPP
#define MU3CPP_MU3_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "field.hpp"

namespace mu3 {

/// Cube roots of unity of F_q (q = 1 mod 3) and the projection x -> x^s onto
/// them, s = (q-1)/3.  Index i in {0,1,2} stands for omega^i, so the index of
/// a product is the sum of indices mod 3.
struct Mu3Context {
  FieldSpec spec;
  u64 s = 0;
  FieldElement omega;
  std::array<FieldElement, 3> mu3;

  /// Index of u in mu3, or nullopt when u is not a cube root of unity.
  std::optional<int> index_of(FieldElement u) const noexcept {
    for (int i = 0; i < 3; ++i) {
      if (mu3[i] == u) return i;
    }
    return std::nullopt;
  }
};

/// Builds the context.  Without an override, omega is the root of
/// X^2 + X + 1 with the smaller rank; an override must be a primitive cube
/// root and fixes the ordering mu3 = [1, omega, omega^2].
inline Mu3Context make_mu3(const FieldSpec& spec, std::optional<FieldElement> omega = std::nullopt) {
  const u64 q = spec.q();
  if (q % 3 != 1) {
    throw Error(ErrorCode::NotOneModThree, "q=" + std::to_string(q) + " is not 1 mod 3");
  }
  Mu3Context ctx{spec, (q - 1) / 3, {}, {}};
  if (omega) {
    if (!spec.contains(*omega) || *omega == spec.one() || spec.pow(*omega, 3) != spec.one()) {
      throw Error(ErrorCode::NotPrimitiveCubeRoot,
                  "not a primitive cube root of unity in F_" + spec.name());
    }
    ctx.omega = *omega;
  } else {
    // Any x with x^s != 1 gives a primitive cube root; the other one is its square.
    for (u64 x = 2; x < q; ++x) {
      const FieldElement w = spec.pow(spec.from_rank(x), ctx.s);
      if (w != spec.one()) {
        const FieldElement w2 = spec.mul(w, w);
        ctx.omega = std::min(w, w2);
        break;
      }
    }
    // q = 4 has s = 1 and x = 2 already works; every q = 1 mod 3 reaches here.
  }
  ctx.mu3 = {spec.one(), ctx.omega, spec.mul(ctx.omega, ctx.omega)};
  return ctx;
}

/// i such that x^s = mu3[i].
inline int project(const Mu3Context& ctx, FieldElement x) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroInput, "projection of zero");
  const auto idx = ctx.index_of(ctx.spec.pow(x, ctx.s));
  if (!idx) std::terminate();  // x^(q-1) = 1 forces x^s into mu3
  return *idx;
}

/// The s elements of F_q^* projecting to mu3[u_index], in increasing rank.
inline std::vector<FieldElement> fiber_elements(const Mu3Context& ctx, int u_index) {
  if (u_index < 0 || u_index > 2) throw Error(ErrorCode::InvalidArgument, "fiber index must be 0, 1 or 2");
  std::vector<FieldElement> out;
  out.reserve(ctx.s);
  for (u64 x = 1; x < ctx.spec.q(); ++x) {
    const FieldElement e = ctx.spec.from_rank(x);
    if (project(ctx, e) == u_index) out.push_back(e);
  }
  return out;
}

/// Kernel of the projection: the fiber over 1.
inline std::vector<FieldElement> kernel_elements(const Mu3Context& ctx) { return fiber_elements(ctx, 0); }

}  // namespace mu3

#endif  // MU3CPP_MU3_HPP
