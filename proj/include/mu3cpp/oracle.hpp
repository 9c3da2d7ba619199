#ifndef MU3CPP_ORACLE_HPP
#define MU3CPP_ORACLE_HPP

// Ground truth by full evaluation.  Nothing here consults the criteria.

#include <optional>
#include <utility>
#include <vector>

#include "trinomial.hpp"

namespace mu3 {

/// Rank of x in [0, q): the residue for prime fields, the base-p value of the
/// coefficient vector otherwise.
inline u64 element_rank(const FieldSpec& spec, FieldElement x) {
  if (!spec.contains(x)) throw Error(ErrorCode::FieldMismatch, "element outside F_" + spec.name());
  return x.rank();
}

/// Fixed-size occupancy set over [0, q).
class OccupancyBitset {
 public:
  explicit OccupancyBitset(u64 size) : words_((size + 63) / 64, 0) {}

  /// Marks i; returns whether it was already set.
  bool test_and_set(u64 i) noexcept {
    u64& w = words_[i >> 6];
    const u64 bit = u64{1} << (i & 63);
    const bool was = (w & bit) != 0;
    w |= bit;
    return was;
  }
  bool test(u64 i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1; }

 private:
  std::vector<u64> words_;
};

struct BijectionVerdict {
  bool is_bijection = true;
  /// (x1, x2), x1 < x2 in rank, x2 the first rank whose image was already taken.
  std::optional<std::pair<FieldElement, FieldElement>> collision;
  std::optional<FieldElement> collision_image;
  /// Every preimage of collision_image, ascending.
  std::vector<FieldElement> collision_preimages;
  /// Smallest element not attained.
  std::optional<FieldElement> missed;
};

/// Evaluates `eval` on all of F_q and decides bijectivity.
template <typename Map>
BijectionVerdict check_permutation(const FieldSpec& spec, Map&& eval) {
  const u64 q = spec.q();
  OccupancyBitset seen(q);
  BijectionVerdict v;
  for (u64 x = 0; x < q; ++x) {
    const FieldElement y = eval(spec.from_rank(x));
    if (seen.test_and_set(element_rank(spec, y)) && !v.collision) {
      v.is_bijection = false;
      v.collision = std::make_pair(spec.zero(), spec.from_rank(x));
      v.collision_image = y;
    }
  }
  if (v.is_bijection) return v;
  for (u64 x = 0; x < q; ++x) {
    if (!seen.test(x)) {
      v.missed = spec.from_rank(x);
      break;
    }
  }
  // Second targeted scan for all preimages of the colliding image.
  for (u64 x = 0; x < q; ++x) {
    const FieldElement e = spec.from_rank(x);
    if (eval(e) == *v.collision_image) v.collision_preimages.push_back(e);
  }
  v.collision->first = v.collision_preimages.front();
  return v;
}

struct PpCppVerdict {
  bool f_is_pp = false;
  bool F_is_pp = false;
  bool is_cpp = false;
  BijectionVerdict f;
  BijectionVerdict F;
};

inline PpCppVerdict check_pp_cpp(const CycloTrinomial& t) {
  PpCppVerdict out;
  out.f = check_permutation(t.spec(), [&](FieldElement x) { return eval_f(t, x); });
  out.F = check_permutation(t.spec(), [&](FieldElement x) { return eval_F(t, x); });
  out.f_is_pp = out.f.is_bijection;
  out.F_is_pp = out.F.is_bijection;
  out.is_cpp = out.f_is_pp && out.F_is_pp;
  return out;
}

}  // namespace mu3

#endif  // MU3CPP_ORACLE_HPP
