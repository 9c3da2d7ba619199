#ifndef MU3CPP_SEARCH_HPP
#define MU3CPP_SEARCH_HPP

#include <algorithm>
#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "criteria.hpp"
#include "oracle.hpp"

namespace mu3 {

/// Runs fn over items on up to `threads` workers (0 = hardware concurrency);
/// results come back in item order whatever the completion order.
template <typename Item, typename Fn>
auto parallel_map(const std::vector<Item>& items, Fn fn, unsigned threads = 0) {
  using Result = decltype(fn(items.front()));
  std::vector<Result> results(items.size());
  if (items.empty()) return results;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, items.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) results[i] = fn(items[i]);
  };
  if (threads == 1) {
    worker();
    return results;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();  // joins
  return results;
}

/// Prime powers in [q_min, q_max] in ascending order.
inline std::vector<PrimePower> prime_powers_in(u64 q_min, u64 q_max) {
  std::vector<PrimePower> out;
  for (u64 q = std::max<u64>(q_min, 2); q <= q_max; ++q) {
    if (auto pp = prime_power(q)) out.push_back(*pp);
  }
  return out;
}

/// Context oriented so that omega = delta (canonical when delta = 1).  The
/// c-table and tau are then listed as values at [1, delta, delta^2].
inline Mu3Context context_for_delta(const FieldSpec& spec, FieldElement delta) {
  if (delta == spec.one()) return make_mu3(spec);
  return make_mu3(spec, delta);
}

struct DeltaCandidate {
  FieldElement delta;
  bool admissible = false;
  FieldElement witness;  // 3 delta^2 + 1
};

/// Each delta in mu3 with the hypothesis (3 delta^2 + 1)^s = 1.
inline std::vector<DeltaCandidate> enumerate_delta(const Mu3Context& ctx) {
  std::vector<DeltaCandidate> out;
  for (auto delta : ctx.mu3) {
    const auto h = bbd3_hypothesis(ctx, {Bbd3Variant::DeltaForm, delta, {}, 1});
    out.push_back({delta, h.holds, h.witness});
  }
  return out;
}

enum class Criterion { Scalar, General };

/// Machine-checkable record of one CPP instance.  Only built when every
/// criterion check passed; oracle fields come from an actual oracle run.
struct Certificate {
  FieldSpec spec;
  FieldElement omega;
  FieldElement delta;
  std::optional<u64> k;
  u64 r = 1;
  std::array<FieldElement, 3> c;
  std::optional<std::array<FieldElement, 3>> tau;
  Mu3Triple v;
  Mu3Triple psi_bar;
  Criterion criterion = Criterion::Scalar;
  std::vector<std::pair<std::string, bool>> checks;
  bool f_is_pp = false;
  bool F_is_pp = false;
  bool oracle_confirmed = false;
};

/// Scalar-criterion certificate for t, or nullopt when H1/H2 fail.
inline std::optional<Certificate> certify_scalar(const CycloTrinomial& t, FieldElement delta) {
  const auto rep = scalar_cpp_check(t);
  if (!rep.is_cpp()) return std::nullopt;
  const auto oracle = check_pp_cpp(t);
  Certificate cert{t.spec(), t.ctx.omega, delta, rep.k, t.r, t.c, rep.tau, rep.v, rep.psi_bar, Criterion::Scalar,
                   {{"h1", rep.h1}, {"h2", rep.h2}}, oracle.f_is_pp, oracle.F_is_pp, oracle.is_cpp};
  return cert;
}

/// General-criterion certificate for t, or nullopt when any of G1-G4 fails.
inline std::optional<Certificate> certify_general(const CycloTrinomial& t, FieldElement delta) {
  const auto rep = general_cpp_check(t);
  if (!rep.is_cpp()) return std::nullopt;
  const auto oracle = check_pp_cpp(t);
  Certificate cert{t.spec(), t.ctx.omega, delta, std::nullopt, t.r, t.c, std::nullopt, rep.v, rep.psi_bar,
                   Criterion::General,
                   {{"g1", rep.g1.pass}, {"g2", rep.g2.pass}, {"g3", rep.g3.pass}, {"g4", rep.g4.pass}},
                   oracle.f_is_pp, oracle.F_is_pp, oracle.is_cpp};
  return cert;
}

struct ScalarRejection {
  FieldElement delta;
  u64 k = 0;
  bool h1 = false;
  bool h2 = false;
};

struct ScalarScan {
  std::vector<Certificate> certificates;
  std::vector<ScalarRejection> rejected;
  std::vector<DeltaCandidate> deltas;
};

/// delta-family trinomials with r = 1 + k s for every admissible delta and
/// k in [1, k_max].
inline ScalarScan scan_scalar_families(const FieldSpec& spec, u64 k_max) {
  if (spec.q() % 9 != 1) throw Error(ErrorCode::NotOneModNine, "q=" + std::to_string(spec.q()) + " is not 1 mod 9");
  const Mu3Context base = make_mu3(spec);
  ScalarScan out;
  out.deltas = enumerate_delta(base);
  for (const auto& cand : out.deltas) {
    if (!cand.admissible) continue;
    const Mu3Context ctx = context_for_delta(spec, cand.delta);
    for (u64 k = 1; k <= k_max; ++k) {
      const auto t = build_delta_family(ctx, cand.delta, 1 + k * ctx.s);
      const auto rep = scalar_cpp_check(t);
      if (!rep.is_cpp()) {
        out.rejected.push_back({cand.delta, k, rep.h1, rep.h2});
        continue;
      }
      out.certificates.push_back(*certify_scalar(t, cand.delta));
    }
  }
  return out;
}

/// scan_scalar_families over every prime power q = 1 mod 9 in the range,
/// merged in ascending q.
inline std::vector<Certificate> scan_scalar_range(u64 q_min, u64 q_max, u64 k_max, unsigned threads = 0) {
  std::vector<FieldSpec> fields;
  for (auto pp : prime_powers_in(q_min, q_max)) {
    const FieldSpec f = make_field(pp.p, pp.n);
    if (f.q() % 9 == 1) fields.push_back(f);
  }
  auto per_q = parallel_map(fields, [&](const FieldSpec& f) { return scan_scalar_families(f, k_max).certificates; },
                            threads);
  std::vector<Certificate> out;
  for (auto& v : per_q) out.insert(out.end(), v.begin(), v.end());
  return out;
}

enum class FailureReason { NotInjective, HitsZeroTwice };

inline std::string_view to_string(FailureReason r) noexcept {
  return r == FailureReason::HitsZeroTwice ? "HitsZeroTwice" : "NotInjective";
}

/// F = f + X failing to permute F_q, with the oracle's first collision.
struct FailureRecord {
  FieldSpec spec;
  FieldElement delta;
  u64 r = 1;
  FieldElement x1, x2, image;
  std::vector<FieldElement> preimages;
  FailureReason reason = FailureReason::NotInjective;
};

struct CounterexampleMeta {
  u64 q = 0;
  bool exhaustive_r = true;
  std::size_t r_tested = 0;
  std::size_t shapes_tested = 0;
  std::size_t failures = 0;
};

struct CounterexampleScan {
  std::vector<FailureRecord> records;
  std::vector<CounterexampleMeta> meta;
};

/// Exponents tried per q: every unit mod q-1 up to q = 256, else the first 50.
inline constexpr u64 kExhaustiveRLimit = 256;
inline constexpr std::size_t kSampledRCount = 50;

/// Delta-family F = f + X over prime powers q = 1 mod 3, q != 1 mod 9.
inline CounterexampleScan counterexample_scan(u64 q_min, u64 q_max, unsigned threads = 0) {
  if (q_min > q_max) throw Error(ErrorCode::InvalidArgument, "q_min must not exceed q_max");
  std::vector<FieldSpec> fields;
  for (auto pp : prime_powers_in(q_min, q_max)) {
    const u64 q = *checked_pow(pp.p, pp.n, kMaxOrder);
    if (q % 3 == 1 && q % 9 != 1) fields.push_back(make_field(pp.p, pp.n));
  }
  struct PerQ {
    std::vector<FailureRecord> records;
    CounterexampleMeta meta;
  };
  auto per_q = parallel_map(
      fields,
      [](const FieldSpec& f) {
        PerQ out;
        out.meta.q = f.q();
        auto rs = units_mod(f.q() - 1);
        if (f.q() > kExhaustiveRLimit && rs.size() > kSampledRCount) {
          rs.resize(kSampledRCount);
          out.meta.exhaustive_r = false;
        }
        out.meta.r_tested = rs.size();
        const Mu3Context base = make_mu3(f);
        for (auto delta : base.mu3) {
          const Mu3Context ctx = context_for_delta(f, delta);
          for (u64 r : rs) {
            const auto t = build_delta_family(ctx, delta, r);
            const auto verdict = check_permutation(f, [&](FieldElement x) { return eval_F(t, x); });
            ++out.meta.shapes_tested;
            if (verdict.is_bijection) continue;
            FailureRecord rec{f, delta, r, verdict.collision->first, verdict.collision->second,
                              *verdict.collision_image, verdict.collision_preimages, FailureReason::NotInjective};
            if (rec.image.is_zero()) rec.reason = FailureReason::HitsZeroTwice;
            out.records.push_back(std::move(rec));
          }
        }
        out.meta.failures = out.records.size();
        return out;
      },
      threads);
  CounterexampleScan out;
  for (auto& pq : per_q) {
    out.records.insert(out.records.end(), pq.records.begin(), pq.records.end());
    out.meta.push_back(pq.meta);
  }
  return out;
}

struct CensusRow {
  u64 q = 0, p = 0, n = 0, s = 0;
  std::size_t admissible_delta = 0;
  std::size_t scalar_certified = 0;
  std::size_t oracle_cpp = 0;
  std::size_t discrepancies = 0;
};

inline constexpr u64 kCensusMaxOrder = 10000;

/// One row per q = 1 mod 3 up to q_max (primes only unless
/// include_prime_powers).  Scanned shapes are the delta-family trinomials
/// with r = 1 + k s, k in [1, k_max], for every delta in mu3; scalar
/// certification is attempted only when q = 1 mod 9.
inline std::vector<CensusRow> census(u64 q_max, u64 k_max = 6, bool include_prime_powers = false,
                                     unsigned threads = 0) {
  if (q_max > kCensusMaxOrder) throw Error(ErrorCode::InvalidArgument, "census is limited to q <= 10000");
  std::vector<FieldSpec> fields;
  for (auto pp : prime_powers_in(2, q_max)) {
    if (pp.n > 1 && !include_prime_powers) continue;
    const u64 q = *checked_pow(pp.p, pp.n, kMaxOrder);
    if (q % 3 == 1) fields.push_back(make_field(pp.p, pp.n));
  }
  return parallel_map(
      fields,
      [k_max](const FieldSpec& f) {
        CensusRow row{f.q(), f.p(), f.n(), (f.q() - 1) / 3};
        const Mu3Context base = make_mu3(f);
        const auto deltas = enumerate_delta(base);
        row.admissible_delta = static_cast<std::size_t>(
            std::count_if(deltas.begin(), deltas.end(), [](const DeltaCandidate& d) { return d.admissible; }));
        if (f.q() % 9 == 1) {
          for (const auto& cert : scan_scalar_families(f, k_max).certificates) {
            ++row.scalar_certified;
            if (!cert.oracle_confirmed) ++row.discrepancies;
          }
        }
        for (auto delta : base.mu3) {
          const Mu3Context ctx = context_for_delta(f, delta);
          for (u64 k = 1; k <= k_max; ++k) {
            if (check_pp_cpp(build_delta_family(ctx, delta, 1 + k * ctx.s)).is_cpp) ++row.oracle_cpp;
          }
        }
        return row;
      },
      threads);
}

}  // namespace mu3

#endif  // MU3CPP_SEARCH_HPP
