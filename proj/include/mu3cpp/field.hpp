#ifndef MU3CPP_FIELD_HPP
#define MU3CPP_FIELD_HPP

// Exact arithmetic in F_q for q = p^n <= 2^31.
//
// Elements are stored by their rank: the residue itself for prime fields and
// the base-p value of the little-endian coefficient vector for extensions.
// The rank is the canonical encoding; it also orders elements (constant term
// varies fastest) and indexes the oracle's occupancy bitset.
//
// Extension fields use the first monic irreducible polynomial in increasing
// rank order of its lower coefficients.  Fields with q <= 2^20 additionally
// carry exp/log tables for multiplication; the schoolbook route stays
// available as mul_schoolbook() and is what the tables are built from.

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arith.hpp"
#include "error.hpp"

namespace mu3 {

class FieldSpec;

/// A canonical element of some F_q.  Carries the order of its field so that
/// mixing elements of different fields is detected.
class FieldElement {
 public:
  constexpr FieldElement() noexcept = default;

  constexpr u32 rank() const noexcept { return rank_; }
  constexpr u64 field_order() const noexcept { return q_; }
  constexpr bool is_zero() const noexcept { return rank_ == 0; }

  friend constexpr bool operator==(const FieldElement&, const FieldElement&) = default;
  friend constexpr auto operator<=>(const FieldElement& a, const FieldElement& b) noexcept {
    if (auto c = a.q_ <=> b.q_; c != 0) return c;
    return a.rank_ <=> b.rank_;
  }

 private:
  friend class FieldSpec;
  constexpr FieldElement(u32 rank, u32 q) noexcept : rank_(rank), q_(q) {}

  u32 rank_ = 0;
  u32 q_ = 0;
};

// Dense polynomials over F_p, little-endian coefficient vectors.  Only what
// irreducibility testing needs.
namespace poly {

using Poly = std::vector<u64>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline u64 inv_mod(u64 a, u64 p) {
  u64 result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

/// Remainder of a by a nonzero divisor b.
inline Poly mod(Poly a, const Poly& b, u64 p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const u64 lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const u64 factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j) {
      a[shift + j] = (a[shift + j] + (p - factor) * b[j]) % p;
    }
    trim(a);
  }
  return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
  }
  return mod(std::move(prod), f, p);
}

inline Poly powmod(Poly base, u64 e, const Poly& f, u64 p) {
  Poly result = mod(Poly{1}, f, p);
  base = mod(std::move(base), f, p);
  while (e) {
    if (e & 1) result = mulmod(result, base, f, p);
    base = mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

inline Poly gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const u64 li = inv_mod(a.back(), p);
    for (auto& c : a) c = c * li % p;
  }
  return a;
}

inline u64 eval(const Poly& f, u64 x, u64 p) {
  u64 acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (acc * x + *it) % p;
  return acc;
}

inline bool has_root(const Poly& f, u64 p) {
  for (u64 x = 0; x < p; ++x) {
    if (eval(f, x, p) == 0) return true;
  }
  return false;
}

/// Ben-Or: a monic f of degree n is irreducible iff
/// gcd(f, X^(p^i) - X) = 1 for every 1 <= i <= n/2.
inline bool irreducible_by_frobenius(const Poly& f, u64 p) {
  const std::size_t n = f.size() - 1;
  Poly frob = {0, 1};
  for (std::size_t i = 1; i <= n / 2; ++i) {
    frob = powmod(frob, p, f, p);
    Poly diff = frob;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    if (gcd(f, diff, p).size() != 1) return false;
  }
  return true;
}

/// Root absence is exact up to degree 3; higher degrees use Ben-Or.
inline bool is_irreducible(const Poly& f, u64 p) {
  const std::size_t n = f.size() - 1;
  if (n == 0) return false;
  if (n == 1) return true;
  if (n <= 3) return !has_root(f, p);
  return irreducible_by_frobenius(f, p);
}

}  // namespace poly

/// Description of F_q and its arithmetic.  Immutable and cheap to copy.
class FieldSpec {
 public:
  u64 p() const noexcept { return p_; }
  u32 n() const noexcept { return n_; }
  u64 q() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return n_ == 1; }

  /// Monic modulus, little-endian, n+1 coefficients; empty for prime fields.
  const std::vector<u64>& modulus() const noexcept { return modulus_; }

  /// "p" or "p^n".
  std::string name() const {
    return n_ == 1 ? std::to_string(p_) : std::to_string(p_) + "^" + std::to_string(n_);
  }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept {
    return a.p_ == b.p_ && a.n_ == b.n_;
  }

  FieldElement zero() const noexcept { return {0, static_cast<u32>(q_)}; }
  FieldElement one() const noexcept { return {1, static_cast<u32>(q_)}; }

  /// Integer image in the prime subfield.
  FieldElement from_int(std::int64_t v) const noexcept {
    const auto sp = static_cast<std::int64_t>(p_);
    return make(static_cast<u32>(((v % sp) + sp) % sp));
  }

  FieldElement from_rank(u64 rank) const {
    if (rank >= q_) {
      throw Error(ErrorCode::InvalidArgument,
                  "rank " + std::to_string(rank) + " out of range for q=" + std::to_string(q_));
    }
    return make(static_cast<u32>(rank));
  }

  FieldElement from_digits(std::span<const u64> digits) const {
    if (digits.size() > n_) {
      throw Error(ErrorCode::InvalidArgument, "too many coefficients for degree " + std::to_string(n_));
    }
    u64 rank = 0;
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (digits[i] >= p_) throw Error(ErrorCode::InvalidArgument, "coefficient not reduced mod p");
      rank = rank * p_ + digits[i];
    }
    return make(static_cast<u32>(rank));
  }

  /// Little-endian coefficient vector of length n.
  std::vector<u64> digits(FieldElement a) const {
    check(a);
    std::vector<u64> out(n_);
    u64 v = a.rank();
    for (u32 i = 0; i < n_; ++i) {
      out[i] = v % p_;
      v /= p_;
    }
    return out;
  }

  bool contains(FieldElement a) const noexcept { return a.field_order() == q_ && a.rank() < q_; }

  FieldElement add(FieldElement a, FieldElement b) const {
    check(a, b);
    if (n_ == 1) {
      const u64 s = u64{a.rank()} + b.rank();
      return make(static_cast<u32>(s >= p_ ? s - p_ : s));
    }
    u64 x = a.rank(), y = b.rank(), out = 0, place = 1;
    for (u32 i = 0; i < n_; ++i) {
      const u64 d = (x % p_ + y % p_) % p_;
      out += d * place;
      place *= p_;
      x /= p_;
      y /= p_;
    }
    return make(static_cast<u32>(out));
  }

  FieldElement neg(FieldElement a) const {
    check(a);
    if (n_ == 1) return make(a.rank() == 0 ? 0 : static_cast<u32>(p_ - a.rank()));
    u64 x = a.rank(), out = 0, place = 1;
    for (u32 i = 0; i < n_; ++i) {
      const u64 d = x % p_;
      out += (d == 0 ? 0 : p_ - d) * place;
      place *= p_;
      x /= p_;
    }
    return make(static_cast<u32>(out));
  }

  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

  FieldElement mul(FieldElement a, FieldElement b) const {
    check(a, b);
    if (n_ == 1) return make(static_cast<u32>(u64{a.rank()} * b.rank() % p_));
    if (tables_) {
      if (a.is_zero() || b.is_zero()) return zero();
      const u64 order = q_ - 1;
      u64 e = u64{tables_->log[a.rank()]} + tables_->log[b.rank()];
      if (e >= order) e -= order;
      return make(tables_->exp[e]);
    }
    return mul_schoolbook(a, b);
  }

  /// Polynomial product reduced by the modulus, bypassing any tables.
  FieldElement mul_schoolbook(FieldElement a, FieldElement b) const {
    check(a, b);
    if (n_ == 1) return make(static_cast<u32>(u64{a.rank()} * b.rank() % p_));
    return make(schoolbook(a.rank(), b.rank()));
  }

  /// Square-and-multiply; pow(0, 0) = 1.
  FieldElement pow(FieldElement a, u64 e) const {
    check(a);
    FieldElement result = one();
    FieldElement base = a;
    while (e) {
      if (e & 1) result = mul(result, base);
      e >>= 1;
      if (e) base = mul(base, base);
    }
    return result;
  }

  FieldElement inv(FieldElement a) const {
    check(a);
    if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero in F_" + name());
    return pow(a, q_ - 2);
  }

  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

 private:
  friend FieldSpec make_field(u64 p, u32 n);

  struct LogTables {
    std::vector<u32> exp;  // exp[i] = rank of g^i, i in [0, q-1)
    std::vector<u32> log;  // log[rank], undefined at 0
  };

  FieldElement make(u32 rank) const noexcept { return {rank, static_cast<u32>(q_)}; }

  void check(FieldElement a) const {
    if (a.field_order() != q_) {
      throw Error(ErrorCode::FieldMismatch, "element of F_" + std::to_string(a.field_order()) +
                                                " used in F_" + name());
    }
  }
  void check(FieldElement a, FieldElement b) const {
    check(a);
    check(b);
  }

  u32 schoolbook(u64 x, u64 y) const {
    // Digits fit on the stack: n <= 31 since p >= 2 and q <= 2^31.
    u64 da[32] = {}, db[32] = {}, prod[64] = {};
    for (u32 i = 0; i < n_; ++i) {
      da[i] = x % p_;
      x /= p_;
      db[i] = y % p_;
      y /= p_;
    }
    for (u32 i = 0; i < n_; ++i) {
      if (da[i] == 0) continue;
      for (u32 j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
    for (u32 k = 2 * n_ - 2; k >= n_; --k) {
      const u64 c = prod[k];
      if (c == 0) continue;
      for (u32 j = 0; j <= n_; ++j) {
        prod[k - n_ + j] = (prod[k - n_ + j] + (p_ - c) * modulus_[j]) % p_;
      }
    }
    u64 rank = 0;
    for (u32 i = n_; i-- > 0;) rank = rank * p_ + prod[i];
    return static_cast<u32>(rank);
  }

  void build_tables() {
    const u64 order = q_ - 1;
    const auto factors = prime_factors(order);
    auto pow_schoolbook = [&](u32 g, u64 e) {
      u32 result = 1, base = g;
      while (e) {
        if (e & 1) result = schoolbook(result, base);
        base = schoolbook(base, base);
        e >>= 1;
      }
      return result;
    };
    u32 generator = 0;
    for (u32 g = 2; g < q_; ++g) {
      bool primitive = true;
      for (u64 l : factors) {
        if (pow_schoolbook(g, order / l) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        generator = g;
        break;
      }
    }
    if (generator == 0) return;  // q = 2 has no extension; unreachable otherwise
    auto t = std::make_shared<LogTables>();
    t->exp.resize(order);
    t->log.assign(q_, 0);
    u32 cur = 1;
    for (u64 i = 0; i < order; ++i) {
      t->exp[i] = cur;
      t->log[cur] = static_cast<u32>(i);
      cur = schoolbook(cur, generator);
    }
    tables_ = std::move(t);
  }

  u64 p_ = 2;
  u32 n_ = 1;
  u64 q_ = 2;
  std::vector<u64> modulus_;
  std::shared_ptr<const LogTables> tables_;
};

/// Fields at or below this order get exp/log multiplication tables.
inline constexpr u64 kTableOrderLimit = u64{1} << 20;

/// Builds F_{p^n}.  Throws NotPrime, OrderTooLarge or InvalidArgument.
inline FieldSpec make_field(u64 p, u32 n) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
  const auto q = checked_pow(p, n, kMaxOrder);
  if (!q) {
    throw Error(ErrorCode::OrderTooLarge,
                std::to_string(p) + "^" + std::to_string(n) + " exceeds 2^31");
  }
  FieldSpec f;
  f.p_ = p;
  f.n_ = n;
  f.q_ = *q;
  if (n == 1) return f;

  // Monic degree-n candidates in increasing rank of their lower n
  // coefficients; the first irreducible one is the modulus.
  poly::Poly cand(n + 1, 0);
  cand[n] = 1;
  for (u64 m = 0; m < *q; ++m) {
    u64 v = m;
    for (u32 i = 0; i < n; ++i) {
      cand[i] = v % p;
      v /= p;
    }
    if (cand[0] != 0 && poly::is_irreducible(cand, p)) {
      f.modulus_ = cand;
      break;
    }
  }
  if (f.modulus_.empty()) std::terminate();  // irreducibles exist in every degree
  if (f.q_ <= kTableOrderLimit) f.build_tables();
  return f;
}

/// Parses "p" or "p^n".
inline FieldSpec parse_field(std::string_view text) {
  auto parse_uint = [&](std::string_view s) -> u64 {
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw Error(ErrorCode::ParseError, "bad field string '" + std::string(text) + "'");
    }
    return v;
  };
  const auto caret = text.find('^');
  if (caret == std::string_view::npos) return make_field(parse_uint(text), 1);
  const u64 n = parse_uint(text.substr(caret + 1));
  if (n > 64) throw Error(ErrorCode::OrderTooLarge, "extension degree too large");
  return make_field(parse_uint(text.substr(0, caret)), static_cast<u32>(n));
}

/// Decimal residue for prime fields; comma-joined little-endian digits otherwise.
inline std::string format_element(const FieldSpec& f, FieldElement a) {
  if (f.is_prime_field()) return std::to_string(f.digits(a)[0]);
  std::string out;
  for (u64 d : f.digits(a)) {
    if (!out.empty()) out += ',';
    out += std::to_string(d);
  }
  return out;
}

/// Inverse of format_element.  Prime fields also accept negative integers and
/// values >= p (reduced); extension digit lists may be shorter than n.
inline FieldElement parse_element(const FieldSpec& f, std::string_view text) {
  auto bad = [&] { return Error(ErrorCode::ParseError, "bad element '" + std::string(text) + "'"); };
  if (f.is_prime_field() && text.find(',') == std::string_view::npos) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) throw bad();
    return f.from_int(v);
  }
  std::vector<u64> digits;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    u64 d = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), d);
    if (ec != std::errc{} || ptr != piece.data() + piece.size() || piece.empty()) throw bad();
    digits.push_back(d);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  try {
    return f.from_digits(digits);
  } catch (const Error&) {
    throw bad();
  }
}

}  // namespace mu3

#endif  // MU3CPP_FIELD_HPP
