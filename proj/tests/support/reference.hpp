#ifndef MU3CPP_TESTS_REFERENCE_HPP
#define MU3CPP_TESTS_REFERENCE_HPP

// Test-only reference routes over prime fields using plain 64-bit modular
// integers.  Nothing here calls into the library, so agreement with it is
// independent evidence.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace ref {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

/// Inverse by exhaustive search.
inline u64 inverse_by_search(u64 a, u64 p) {
  for (u64 x = 1; x < p; ++x) {
    if (a * x % p == 1) return x;
  }
  return 0;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d < n; ++d) {
    if (d * d > n) break;
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<u64> primes_one_mod(u64 modulus, u64 limit) {
  std::vector<u64> out;
  for (u64 q = 2; q <= limit; ++q) {
    if (is_prime(q) && q % modulus == 1) out.push_back(q);
  }
  return out;
}

/// Roots of X^2 + X + 1 mod p by enumeration.
inline std::vector<u64> cube_roots_of_unity(u64 p) {
  std::vector<u64> out;
  for (u64 x = 0; x < p; ++x) {
    if ((x * x + x + 1) % p == 0) out.push_back(x);
  }
  return out;
}

/// Sort-and-compare bijectivity of a table of images.
inline bool is_bijection(std::vector<u64> images) {
  std::sort(images.begin(), images.end());
  for (u64 i = 0; i < images.size(); ++i) {
    if (images[i] != i) return false;
  }
  return true;
}

/// X^r (X^2s + a X^s + b) evaluated straight from the polynomial.
inline u64 trinomial(u64 x, u64 r, u64 s, u64 a, u64 b, u64 p) {
  const u64 xs = powmod(x, s, p);
  return powmod(x, r, p) * ((xs * xs + a * xs + b) % p) % p;
}

/// Images of X^r(X^2s + delta X^s + delta^2 + 1) (+ X when plus_x) on F_p.
inline std::vector<u64> delta_family_images(u64 p, u64 delta, u64 r, bool plus_x) {
  const u64 s = (p - 1) / 3;
  std::vector<u64> out(p);
  for (u64 x = 0; x < p; ++x) {
    out[x] = (trinomial(x, r, s, delta, (delta * delta + 1) % p, p) + (plus_x ? x : 0)) % p;
  }
  return out;
}

inline std::vector<u64> gamma_family_images(u64 p, u64 gamma, u64 r) {
  const u64 s = (p - 1) / 3;
  std::vector<u64> out(p);
  for (u64 x = 0; x < p; ++x) out[x] = trinomial(x, r, s, 1, gamma, p);
  return out;
}

/// Units mod m drawn with a fixed seed (may repeat when few exist).
inline std::vector<u64> sample_units(u64 m, std::size_t count, std::mt19937_64& rng) {
  std::vector<u64> units;
  for (u64 r = 1; r <= m; ++r) {
    if (std::gcd(r, m) == 1) units.push_back(r);
  }
  std::shuffle(units.begin(), units.end(), rng);
  std::vector<u64> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(units[i % units.size()]);
  return out;
}

}  // namespace ref

#endif  // MU3CPP_TESTS_REFERENCE_HPP
