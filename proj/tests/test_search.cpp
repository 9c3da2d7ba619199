#include <gtest/gtest.h>

#include <algorithm>

#include "mu3cpp/search.hpp"
#include "mu3cpp/serialize.hpp"
#include "support/reference.hpp"

using namespace mu3;

namespace {

const DeltaCandidate* find_delta(const std::vector<DeltaCandidate>& v, FieldElement d) {
  for (const auto& c : v) {
    if (c.delta == d) return &c;
  }
  return nullptr;
}

bool has_certificate(const std::vector<Certificate>& certs, std::int64_t delta, u64 k) {
  return std::any_of(certs.begin(), certs.end(), [&](const Certificate& c) {
    return c.delta == c.spec.from_int(delta) && c.k == k;
  });
}

}  // namespace

TEST(ParallelMap, PreservesOrderForAnyThreadCount) {
  std::vector<int> items(97);
  for (int i = 0; i < 97; ++i) items[i] = i;
  for (unsigned threads : {1u, 2u, 7u, 0u}) {
    const auto out = parallel_map(items, [](int x) { return x * x; }, threads);
    ASSERT_EQ(out.size(), items.size());
    for (int i = 0; i < 97; ++i) ASSERT_EQ(out[i], i * i);
  }
  EXPECT_TRUE(parallel_map(std::vector<int>{}, [](int x) { return x; }, 4).empty());
}

TEST(EnumerateDelta, PinnedWitnesses) {
  const FieldSpec f109 = make_field(109, 1);
  const auto d109 = enumerate_delta(make_mu3(f109));
  ASSERT_EQ(d109.size(), 3u);
  const auto* c63 = find_delta(d109, f109.from_int(63));
  ASSERT_NE(c63, nullptr);
  EXPECT_TRUE(c63->admissible);
  EXPECT_EQ(c63->witness, f109.from_int(27));

  const FieldSpec f163 = make_field(163, 1);
  const auto d163 = enumerate_delta(make_mu3(f163));
  const auto* c58 = find_delta(d163, f163.from_int(58));
  ASSERT_NE(c58, nullptr);
  EXPECT_TRUE(c58->admissible);
  EXPECT_EQ(c58->witness, f163.from_int(150));

  const FieldSpec f13 = make_field(13, 1);
  const auto d13 = enumerate_delta(make_mu3(f13));
  const auto* c1 = find_delta(d13, f13.one());
  ASSERT_NE(c1, nullptr);
  EXPECT_FALSE(c1->admissible);
  EXPECT_EQ(c1->witness, f13.from_int(4));
}

TEST(EnumerateDelta, AgreesWithIntegerRoute) {
  for (u64 q : ref::primes_one_mod(3, 1000)) {
    const FieldSpec f = make_field(q, 1);
    const u64 s = (q - 1) / 3;
    for (const auto& cand : enumerate_delta(make_mu3(f))) {
      const u64 d = cand.delta.rank();
      ASSERT_EQ(cand.admissible, ref::powmod((3 * d * d + 1) % q, s, q) == 1) << q << " " << d;
    }
  }
}

TEST(ScanScalar, PinnedInstances) {
  const auto s109 = scan_scalar_families(make_field(109, 1), 2);
  EXPECT_TRUE(has_certificate(s109.certificates, 63, 2));
  const auto s163 = scan_scalar_families(make_field(163, 1), 3);
  EXPECT_TRUE(has_certificate(s163.certificates, 58, 3));
  for (const auto& c : s163.certificates) {
    if (c.delta == c.spec.from_int(58) && c.k == 3u) { EXPECT_EQ(c.r, 163u); }
  }
  EXPECT_THROW((void)scan_scalar_families(make_field(13, 1), 3), Error);
}

TEST(ScanScalar, EveryCertificateOracleConfirmed) {
  const auto s19 = scan_scalar_families(make_field(19, 1), 6);
  for (const auto& c : s19.certificates) EXPECT_TRUE(c.oracle_confirmed);
  for (const auto& c : scan_scalar_range(2, 1000, 6, 4)) {
    ASSERT_TRUE(c.oracle_confirmed) << c.spec.name() << " r=" << c.r;
    ASSERT_TRUE(c.f_is_pp && c.F_is_pp);
    ASSERT_EQ(c.criterion, Criterion::Scalar);
  }
}

TEST(ScanScalar, DeterministicAcrossThreadCounts) {
  const auto a = scan_scalar_range(2, 800, 6, 1);
  const auto b = scan_scalar_range(2, 800, 6, 8);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(certificate_json(a[i]), certificate_json(b[i]));
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end(),
                             [](const Certificate& x, const Certificate& y) { return x.spec.q() < y.spec.q(); }));
}

TEST(Counterexamples, SevenAndThirtyOne) {
  const auto s7 = counterexample_scan(7, 7);
  ASSERT_EQ(s7.meta.size(), 1u);
  EXPECT_TRUE(s7.meta[0].exhaustive_r);
  const FieldSpec f7 = make_field(7, 1);
  auto it7 = std::find_if(s7.records.begin(), s7.records.end(),
                          [&](const FailureRecord& r) { return r.delta == f7.from_int(2) && r.r == 1; });
  ASSERT_NE(it7, s7.records.end());
  EXPECT_EQ(it7->reason, FailureReason::HitsZeroTwice);
  EXPECT_EQ(it7->preimages, (std::vector{f7.zero(), f7.from_int(3), f7.from_int(4)}));

  const auto s31 = counterexample_scan(31, 31);
  const FieldSpec f31 = make_field(31, 1);
  auto it31 = std::find_if(s31.records.begin(), s31.records.end(),
                           [&](const FailureRecord& r) { return r.delta == f31.from_int(25) && r.r == 7; });
  ASSERT_NE(it31, s31.records.end());
  EXPECT_EQ(it31->image, f31.from_int(10));
  EXPECT_EQ(it31->reason, FailureReason::NotInjective);
  EXPECT_NE(std::find(it31->preimages.begin(), it31->preimages.end(), f31.from_int(5)), it31->preimages.end());
  EXPECT_NE(std::find(it31->preimages.begin(), it31->preimages.end(), f31.from_int(8)), it31->preimages.end());
}

TEST(Counterexamples, RecordsReverify) {
  const auto scan = counterexample_scan(4, 400, 4);
  EXPECT_FALSE(scan.records.empty());
  EXPECT_EQ(scan.meta.front().q, 4u);
  for (const auto& m : scan.meta) {
    EXPECT_TRUE(m.q % 3 == 1 && m.q % 9 != 1);
    EXPECT_EQ(m.exhaustive_r, m.q <= kExhaustiveRLimit);
  }
  for (const auto& rec : scan.records) {
    const auto t = build_delta_family(context_for_delta(rec.spec, rec.delta), rec.delta, rec.r);
    ASSERT_NE(rec.x1, rec.x2);
    ASSERT_EQ(eval_F(t, rec.x1), rec.image);
    ASSERT_EQ(eval_F(t, rec.x2), rec.image);
    ASSERT_EQ(rec.reason == FailureReason::HitsZeroTwice, rec.image.is_zero());
  }
  EXPECT_THROW((void)counterexample_scan(10, 5), Error);
}

TEST(Census, SmallRanges) {
  const auto r7 = census(7);
  ASSERT_EQ(r7.size(), 1u);
  EXPECT_EQ(r7[0].q, 7u);
  EXPECT_EQ(r7[0].scalar_certified, 0u);

  const auto r200 = census(200);
  auto row = [&](u64 q) { return *std::find_if(r200.begin(), r200.end(), [&](const CensusRow& r) { return r.q == q; }); };
  EXPECT_GE(row(109).scalar_certified, 1u);
  EXPECT_GE(row(163).scalar_certified, 1u);
  EXPECT_GE(row(199).scalar_certified, 1u);
  for (const auto& r : r200) {
    EXPECT_EQ(r.discrepancies, 0u);
    EXPECT_LE(r.scalar_certified, r.oracle_cpp);
  }
  EXPECT_THROW((void)census(10001), Error);

  const auto with_pp = census(100, 6, true);
  EXPECT_TRUE(std::any_of(with_pp.begin(), with_pp.end(), [](const CensusRow& r) { return r.q == 25; }));
  EXPECT_EQ(census_csv_row(r7[0]).substr(0, 4), "7,7,");
}

TEST(Serialize, CertificateRoundTrip) {
  for (const auto& c : scan_scalar_range(100, 400, 6, 2)) {
    const json j = certificate_json(c);
    const json reparsed = json::parse(j.dump());
    const auto t = certificate_trinomial(reparsed);
    EXPECT_EQ(t.spec(), c.spec);
    EXPECT_EQ(t.r, c.r);
    EXPECT_EQ(t.c, c.c);
    EXPECT_EQ(t.ctx.omega, c.omega);
    const auto rep = scalar_cpp_check(t);
    EXPECT_EQ(rep.tau, *c.tau);
    EXPECT_EQ(rep.v, c.v);
  }
  EXPECT_THROW((void)trinomial_from_json(json{{"q", 12}, {"r", 1}, {"c", {1, 1, 1}}}), Error);
  EXPECT_THROW((void)trinomial_from_json(json{{"q", 13}, {"r", 1}, {"c", {1, 1}}}), Error);
}
