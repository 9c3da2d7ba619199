#ifndef MU3CPP_ARITH_HPP
#define MU3CPP_ARITH_HPP

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace mu3 {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

/// Largest field order supported: products of two residues fit in 64 bits and
/// an occupancy bitset over the whole field stays below 256 MiB.
inline constexpr u64 kMaxOrder = u64{1} << 31;

inline constexpr u64 gcd(u64 a, u64 b) noexcept { return std::gcd(a, b); }

/// Deterministic trial division; inputs are bounded by kMaxOrder so the loop
/// runs at most ~46k iterations.
inline constexpr bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (u64 d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

struct PrimePower {
  u64 p;
  u32 n;
};

/// Decomposes q = p^n, or nullopt when q is not a prime power.
inline std::optional<PrimePower> prime_power(u64 q) noexcept {
  if (q < 2) return std::nullopt;
  u64 p = 0;
  for (u64 d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return PrimePower{q, 1};
  u32 n = 0;
  while (q % p == 0) {
    q /= p;
    ++n;
  }
  if (q != 1) return std::nullopt;
  return PrimePower{p, n};
}

/// p^n, or nullopt once the value exceeds `limit`.
inline std::optional<u64> checked_pow(u64 p, u32 n, u64 limit) noexcept {
  u64 v = 1;
  for (u32 i = 0; i < n; ++i) {
    if (v > limit / p) return std::nullopt;
    v *= p;
  }
  if (v > limit) return std::nullopt;
  return v;
}

/// Distinct prime factors in increasing order.
inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Units modulo m in [1, m], i.e. exponents r with gcd(r, m) = 1.
inline std::vector<u64> units_mod(u64 m) {
  std::vector<u64> out;
  for (u64 r = 1; r <= m; ++r) {
    if (gcd(r, m) == 1) out.push_back(r);
  }
  return out;
}

}  // namespace mu3

#endif  // MU3CPP_ARITH_HPP
