// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
// failure.  Every check is exact.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mu3cpp/mu3cpp.hpp"
#include "support/families.hpp"
#include "support/reference.hpp"

using namespace mu3;
using testing_support::delta_family;

namespace {

constexpr u64 kSeed = 20240613;

/// Collects failed sub-checks for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string el(const FieldSpec& f, FieldElement e) { return format_element(f, e); }

bool f_is_pp(const CycloTrinomial& t) {
  return check_permutation(t.spec(), [&](FieldElement x) { return eval_f(t, x); }).is_bijection;
}

std::vector<FieldSpec> prime_fields_one_mod(u64 modulus, u64 q_max) {
  std::vector<FieldSpec> out;
  for (u64 q : ref::primes_one_mod(modulus, q_max)) out.push_back(make_field(q, 1));
  return out;
}

void reproduce_scalar_example(Check& c, u64 q, std::int64_t delta, u64 k, u64 r, std::int64_t c_delta,
                              std::array<std::int64_t, 3> tau, int v_index, std::int64_t v_value) {
  const auto t = delta_family(q, delta, r);
  const FieldSpec& f = t.spec();
  const auto d = f.from_int(delta);
  const auto ctx = t.ctx;
  c.expect(ctx.omega == d && ctx.mu3[1] == d, "mu3 oriented by delta");
  c.expect(t.c[1] == f.from_int(c_delta), "c(delta) = " + std::to_string(c_delta) + ", got " + el(f, t.c[1]));
  c.expect(f.pow(t.c[1], ctx.s) == f.one(), "c(delta)^s = 1");
  c.expect(t.r == 1 + k * ctx.s, "r = 1 + k s");
  const auto rep = scalar_cpp_check(t);
  c.expect(rep.k == k, "k");
  for (int i = 0; i < 3; ++i) {
    c.expect(rep.tau[i] == f.from_int(tau[i]), "tau[" + std::to_string(i) + "] = " + std::to_string(tau[i]) +
                                                   ", got " + el(f, rep.tau[i]));
    c.expect(rep.v[i] == v_index, "v[" + std::to_string(i) + "]");
    c.expect(rep.psi_bar[i] == (i + v_index) % 3, "psi_bar rotation by v");
  }
  c.expect(ctx.mu3[v_index] == f.from_int(v_value), "v = " + std::to_string(v_value));
  c.expect(rep.h1 && rep.h2, "H1 and H2 pass");
  const auto cv = constant_v_check(rep);
  c.expect(cv.family_certified && cv.alpha == v_index, "constant v");
  c.expect(check_pp_cpp(t).is_cpp, "oracle confirms CPP");
}

void criterion_1(Check& c) {
  const FieldSpec f = make_field(109, 1);
  c.expect(f.mul(f.from_int(63), f.from_int(63)) == f.from_int(45), "delta^2 = 45");
  c.expect(f.pow(f.from_int(27), 36) == f.one(), "27^36 = 1");
  reproduce_scalar_example(c, 109, 63, 2, 73, 27, {2, 17, 64}, 0, 1);
  c.expect(general_cpp_check(delta_family(109, 63, 73)).is_cpp(), "G1-G4 pass");
}

void criterion_2(Check& c) {
  const FieldSpec f = make_field(163, 1);
  c.expect(f.mul(f.from_int(58), f.from_int(58)) == f.from_int(104), "delta^2 = 104");
  reproduce_scalar_example(c, 163, 58, 3, 163, 150, {2, 151, 2}, 2, 104);
}

void criterion_3(Check& c) {
  const FieldSpec f = make_field(199, 1);
  c.expect(f.pow(f.from_int(78), 66) == f.one(), "78^66 = 1");
  reproduce_scalar_example(c, 199, 106, 3, 199, 78, {2, 79, 2}, 1, 106);
}

void criterion_4(Check& c) {
  const auto t = delta_family(7, 2, 1);
  const FieldSpec& f = t.spec();
  c.expect(format_polynomial(f, dense_coefficients_F(t)) == "X^5 + 2X^3 + 6X", "dense F");
  // Independent: evaluate X^5 + 2X^3 + 6X with integers.
  for (u64 x = 0; x < 7; ++x) {
    const u64 direct = (ref::powmod(x, 5, 7) + 2 * ref::powmod(x, 3, 7) + 6 * x) % 7;
    c.expect(eval_F(t, f.from_rank(x)).rank() == direct, "F(" + std::to_string(x) + ") matches dense form");
  }
  const auto v = check_pp_cpp(t);
  c.expect(v.f_is_pp && !v.F_is_pp, "f is a PP, F is not");
  c.expect(v.F.collision_image && v.F.collision_image->is_zero(), "collision image 0");
  c.expect(v.F.collision_preimages == std::vector{f.zero(), f.from_int(3), f.from_int(4)}, "preimages {0,3,4}");
}

void criterion_5(Check& c) {
  const auto t = delta_family(31, 25, 7);
  const FieldSpec& f = t.spec();
  c.expect(eval_F(t, f.from_int(5)) == f.from_int(10) && eval_F(t, f.from_int(8)) == f.from_int(10),
           "F(5) = F(8) = 10");
  c.expect(eval_f(t, f.from_int(8)) == f.from_int(2), "f(8) = 2");
  const auto v = check_pp_cpp(t);
  c.expect(v.f_is_pp && !v.F_is_pp, "f is a PP, F is not");
  const auto& pre = v.F.collision_preimages;
  c.expect(std::find(pre.begin(), pre.end(), f.from_int(5)) != pre.end() &&
               std::find(pre.begin(), pre.end(), f.from_int(8)) != pre.end() && *v.F.collision_image == f.from_int(10),
           "oracle collision includes 5 and 8 over 10");
  const auto rep = general_cpp_check(t);
  c.expect(rep.g1.pass && rep.g2.pass && !rep.g3.pass && !rep.g4.pass, "failed conditions are exactly G3, G4");
  c.expect(!rep.g3.detail.empty(), "G3 names a witness");
}

void criterion_6(Check& c) {
  const auto fields = prime_fields_one_mod(3, 1000);
  auto per_q = parallel_map(fields, [](const FieldSpec& f) {
    std::vector<std::string> bad;
    std::mt19937_64 rng(kSeed ^ f.q());
    const Mu3Context base = make_mu3(f);
    std::vector<CycloTrinomial> shapes;
    for (const auto& cand : enumerate_delta(base)) {
      if (!cand.admissible) continue;
      shapes.push_back(build_delta_family(context_for_delta(f, cand.delta), cand.delta, 1));
    }
    std::vector<FieldElement> gammas;
    for (u64 g = 0; g < f.q(); ++g) {
      const auto gamma = f.from_rank(g);
      if (gamma == f.one() || gamma == f.from_int(-2)) continue;
      if (bbd3_hypothesis(base, {Bbd3Variant::GammaForm, {}, gamma, 1}).holds) gammas.push_back(gamma);
    }
    std::shuffle(gammas.begin(), gammas.end(), rng);
    if (gammas.size() > 20) gammas.resize(20);
    for (auto gamma : gammas) shapes.push_back(build_gamma_family(base, gamma, 1));
    for (const auto& shape : shapes) {
      for (u64 r : ref::sample_units(f.q() - 1, 10, rng)) {
        const auto t = make_trinomial(shape.ctx, r, shape.c);
        if (!f_is_pp(t)) bad.push_back("q=" + f.name() + " r=" + std::to_string(r) + " c=" + el(f, t.c[0]));
      }
    }
    return std::make_pair(shapes.size() * 10, bad);
  });
  std::size_t total = 0;
  for (const auto& [n, bad] : per_q) {
    total += n;
    for (const auto& b : bad) c.expect(false, b);
  }
  c.expect(total > 1000, "sweep covered " + std::to_string(total) + " shapes");
}

void criterion_7(Check& c) {
  const std::pair<int, FieldSpec> instances[] = {{1, make_field(13, 1)}, {3, make_field(5, 2)}, {2, make_field(7, 3)}};
  std::mt19937_64 rng(kSeed);
  for (const auto& [item, f] : instances) {
    const auto gamma = bbd4_gamma(item, f);
    const std::string tag = f.name() + " item " + std::to_string(item);
    c.expect(bbd4_divisibility(item, f).holds, tag + ": divisibility");
    const Mu3Context ctx = make_mu3(f);
    c.expect(bbd3_hypothesis(ctx, {Bbd3Variant::GammaForm, {}, gamma, 1}).holds, tag + ": family hypothesis");
    for (u64 r : ref::sample_units(f.q() - 1, 5, rng)) {
      c.expect(f_is_pp(build_gamma_family(ctx, gamma, r)), tag + ": f is a PP for r=" + std::to_string(r));
    }
  }
  c.expect(bbd4_gamma(1, make_field(13, 1)) == make_field(13, 1).from_int(6), "gamma = 6 over F_13");
}

void criterion_8(Check& c) {
  const auto fields = prime_fields_one_mod(3, 300);
  auto per_q = parallel_map(fields, [](const FieldSpec& f) {
    std::vector<std::string> bad;
    std::mt19937_64 rng(kSeed + f.q());
    const Mu3Context ctx = make_mu3(f);
    std::size_t pp = 0, runs = 0;
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<FieldElement> h(3);
      for (auto& e : h) e = f.from_rank(rng() % f.q());
      for (u64 r = 1; r < f.q(); ++r) {
        const auto res = zieve_check({f, 3, r, h, ctx.omega});
        const bool oracle = check_permutation(f, [&](FieldElement x) {
                              return x.is_zero() ? x : f.mul(f.pow(x, r), h[project(ctx, x)]);
                            }).is_bijection;
        ++runs;
        pp += oracle;
        if (res.is_pp != oracle) bad.push_back("q=" + f.name() + " r=" + std::to_string(r));
      }
    }
    return std::make_tuple(runs, pp, bad);
  });
  std::size_t runs = 0, pp = 0;
  for (const auto& [n, p, bad] : per_q) {
    runs += n;
    pp += p;
    for (const auto& b : bad) c.expect(false, b);
  }
  // Both directions of the equivalence must actually be exercised.
  c.expect(pp > 0 && pp < runs, "both verdicts occur");
}

void criterion_9(Check& c, std::vector<Certificate>& certs) {
  const auto fields = prime_fields_one_mod(9, 2000);
  auto per_q = parallel_map(fields, [](const FieldSpec& f) { return scan_scalar_families(f, 6).certificates; });
  for (auto& v : per_q) certs.insert(certs.end(), v.begin(), v.end());
  for (const auto& cert : certs) {
    c.expect(cert.oracle_confirmed, "certificate over F_" + cert.spec.name() + " r=" + std::to_string(cert.r));
  }
  c.expect(!certs.empty(), "certificates emitted");
  std::size_t discrepancies = 0;
  for (const auto& row : census(2000)) discrepancies += row.discrepancies;
  c.expect(discrepancies == 0, "census discrepancies = " + std::to_string(discrepancies));
}

void criterion_10(Check& c, const std::vector<Certificate>& certs) {
  // Scalar transition: general and scalar reports agree whenever r = 1 mod s.
  {
    std::mt19937_64 rng(kSeed);
    for (const auto& f : testing_support::fields_one_mod(9, 2, 1000)) {
      const Mu3Context ctx = make_mu3(f);
      const auto kernel = kernel_elements(ctx);
      const auto reps = canonical_representatives(ctx);
      std::vector<std::array<FieldElement, 3>> tables;
      for (auto delta : ctx.mu3) tables.push_back(build_delta_family(ctx, delta, 1).c);
      for (int i = 0; i < 4; ++i) {
        tables.push_back({kernel[rng() % kernel.size()], kernel[rng() % kernel.size()], kernel[rng() % kernel.size()]});
      }
      for (const auto& table : tables) {
        if (std::any_of(table.begin(), table.end(), [&](FieldElement e) { return f.pow(e, ctx.s) != f.one(); })) {
          continue;
        }
        for (u64 k = 0; k <= 6; ++k) {
          const auto t = make_trinomial(ctx, 1 + k * ctx.s, table);
          const auto sr = scalar_cpp_check(t);
          const auto gr = general_cpp_check(t, reps, kernel);
          const std::string tag = f.name() + " k=" + std::to_string(k);
          c.expect(sr.is_cpp() == gr.is_cpp(), "transition verdict " + tag);
          c.expect(!gr.g3.pass || sr.v == gr.v, "transition v " + tag);
        }
      }
    }
  }
  // Representative independence of G2 and G3.
  {
    std::mt19937_64 rng(kSeed + 1);
    for (const auto& f : testing_support::fields_one_mod(3, 2, 200)) {
      const Mu3Context ctx = make_mu3(f);
      const auto kernel = kernel_elements(ctx);
      const auto canon = canonical_representatives(ctx);
      for (int trial = 0; trial < 4; ++trial) {
        std::array<FieldElement, 3> table;
        for (auto& e : table) e = f.from_rank(1 + rng() % (f.q() - 1));
        if (trial == 0) table = build_delta_family(ctx, ctx.omega, 1).c;
        const auto t = make_trinomial(ctx, 1 + rng() % (2 * f.q()), table);
        const auto base = general_cpp_check(t, canon, kernel);
        for (int i = 0; i < 3; ++i) {
          for (auto e : fiber_elements(ctx, i)) {
            auto reps = canon;
            reps[i] = e;
            const auto other = general_cpp_check(t, reps, kernel);
            c.expect(other.g2.pass == base.g2.pass && other.g3.pass == base.g3.pass && other.v == base.v,
                     "representative " + el(f, e) + " over F_" + f.name());
          }
        }
      }
    }
  }
  // CPP implies PP on every certificate.
  for (const auto& cert : certs) {
    c.expect(!cert.oracle_confirmed || (cert.f_is_pp && cert.F_is_pp), "CPP => PP on F_" + cert.spec.name());
  }
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Certificate> certs;
  const std::pair<const char*, std::function<void(Check&)>> criteria[] = {
      {"F_109, delta=63, k=2, r=73 reproduces tau=(2,17,64), v=(1,1,1)", criterion_1},
      {"F_163, delta=58, k=3, r=163 reproduces tau=(2,151,2), v=104", criterion_2},
      {"F_199, delta=106, k=3, r=199 reproduces tau=(2,79,2), v=106", criterion_3},
      {"F_7, delta=2, r=1: F = X^5 + 2X^3 + 6X sends 0, 3, 4 to 0", criterion_4},
      {"F_31, delta=25, r=7: F(5) = F(8) = 10, G3 and G4 fail", criterion_5},
      {"delta/gamma family soundness over primes q <= 1000", criterion_6},
      {"gamma family instances over F_13, F_25, F_343", criterion_7},
      {"Zieve verdict equals oracle over primes q <= 300", criterion_8},
      {"scalar certificates over primes q = 1 mod 9, q <= 2000; census", [&](Check& c) { criterion_9(c, certs); }},
      {"transition, representative independence, CPP => PP", [&](Check& c) { criterion_10(c, certs); }},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [title, fn] : criteria) {
    ++index;
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = c.failures.empty();
    failed += !ok;
    std::printf("criterion %2d: %s  %s (%.2fs)\n", index, ok ? "PASS" : "FAIL", title, secs);
    for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i) std::printf("    %s\n", c.failures[i].c_str());
    if (c.failures.size() > 10) std::printf("    ... %zu more\n", c.failures.size() - 10);
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %d criteria passed in %.1fs\n", index - failed, index, total);
  return failed == 0 ? 0 : 1;
}
