// Acceptance harness: ten numbered criteria, one PASS/FAIL line each,
// exit 0 only when every criterion passes. All arithmetic checks are exact
// (zero tolerance); the only tolerances are the pinned runtime ceilings,
// the auxiliary-prime confidence, and the sample counts below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "zetalift/cyc_units.hpp"
#include "zetalift/gcohom.hpp"
#include "zetalift/heis.hpp"
#include "zetalift/regular.hpp"
#include "zetalift/spec_seq.hpp"
#include "zetalift/valuations.hpp"

using namespace zetalift;
using cohom::Cochain;
using cohom::FiniteGroup;
using cohom::GModule;
using cyc::CycElt;
using cyc::CycParams;
using cyc::GaloisElt;
using units::CycClass;

namespace {

// pinned tolerances
constexpr double kXiRuntimeLimitSec = 60.0;      // criterion 1
constexpr double kTwistedRuntimeLimitSec = 300;  // criterion 2
constexpr double kLiftRuntimeLimitSec = 120.0;   // criterion 6
constexpr int kAuxPrimes = 20;                   // criterion 2: primes per power test
constexpr int kRandomCyclicInstances = 30;       // criterion 5
constexpr int kEquivariantSamples = 50;          // criterion 7
constexpr int kNormSumSamples = 100;             // criterion 9
constexpr long kGeneratorBox = 4;                // criterion 8: search box half-width

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

std::shared_ptr<const FiniteGroup> share(FiniteGroup G) {
  return std::make_shared<const FiniteGroup>(std::move(G));
}

std::shared_ptr<const GModule> share(GModule M) {
  return std::make_shared<const GModule>(std::move(M));
}

long long order_of(const la::ModStruct& s) {
  long long o = 1;
  for (long long d : s.cyclic_orders) o *= d;
  return o;
}

std::string show(const la::ModStruct& s) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < s.cyclic_orders.size(); ++i)
    os << (i ? "," : "") << s.cyclic_orders[i];
  os << "]";
  return os.str();
}

// --------------------------------------------------------------------------
// 1. xi identities, exact, all a and beta

Outcome criterion_xi_identities() {
  for (long p : {5L, 7L, 11L})
    for (long n : {1L, 2L}) {
      CycParams P = CycParams::make(p, n);
      std::vector<GaloisElt> G = cyc::galois_group(P);
      std::vector<CycElt> xi_of(static_cast<size_t>(P.pn), CycElt::zero(P));
      for (const GaloisElt& a : G) xi_of[static_cast<size_t>(a.a)] = units::xi(P, a);

      if (!(xi_of[1] == CycElt::one(P)))
        return fail("xi_1 != 1 at p=" + std::to_string(p) + " n=" + std::to_string(n));
      for (const GaloisElt& a : G) {
        const CycElt& neg = xi_of[static_cast<size_t>(P.pn - a.a)];
        if (!(neg == -xi_of[static_cast<size_t>(a.a)]))
          return fail("xi_{-a} != -xi_a at p=" + std::to_string(p) + " a=" + std::to_string(a.a));
      }
      for (const GaloisElt& b : G)
        for (const GaloisElt& a : G) {
          long ba = (b * a).a;
          if (!(cyc::galois_apply(b, xi_of[static_cast<size_t>(a.a)]) *
                    xi_of[static_cast<size_t>(b.a)] ==
                xi_of[static_cast<size_t>(ba)]))
            return fail("beta(xi_a) xi_beta != xi_{beta a} at p=" + std::to_string(p) +
                        " n=" + std::to_string(n) + " a=" + std::to_string(a.a) +
                        " beta=" + std::to_string(b.a));
        }
    }
  // the library-level entry point states the same identity
  for (long p : {5L, 7L}) {
    CycParams P = CycParams::make(p, 1);
    for (const GaloisElt& b : cyc::galois_group(P))
      for (const GaloisElt& a : cyc::galois_group(P))
        if (!units::verify_xi_galois(P, b, a))
          return fail("verify_xi_galois refused p=" + std::to_string(p));
  }
  return {};
}

// --------------------------------------------------------------------------
// 2. twisted-action congruences mod p^n-th powers, probabilistic

Outcome criterion_twisted_congruences() {
  for (long p : {5L, 7L})
    for (long n : {1L, 2L}) {
      CycParams P = CycParams::make(p, n);
      units::AuxPrimeCtx ctx(P);
      std::vector<GaloisElt> G = cyc::galois_group(P);
      std::vector<CycClass> cl(static_cast<size_t>(P.pn), CycClass::one(P));
      for (const GaloisElt& a : G)
        cl[static_cast<size_t>(a.a)] = CycClass::of(units::xi(P, a));

      for (const GaloisElt& b : G)
        for (const GaloisElt& a : G) {
          CycClass lhs = units::twisted_act(b, cl[static_cast<size_t>(a.a)]);
          CycClass rhs = cl[static_cast<size_t>((b * a).a)].pow(Int(b.a)) *
                         cl[static_cast<size_t>(b.a)].pow(Int(b.a)).inverse();
          units::PowerTest t = units::is_pn_power(lhs * rhs.inverse(), ctx, kAuxPrimes);
          if (!t.is_power)
            return fail("twisted congruence refuted at p=" + std::to_string(p) +
                        " n=" + std::to_string(n) + " a=" + std::to_string(a.a) +
                        " beta=" + std::to_string(b.a) + " witness=" + t.witness->get_str());
        }
      for (const GaloisElt& a : G) {
        CycClass ratio =
            cl[static_cast<size_t>(a.a)] * cl[static_cast<size_t>(P.pn - a.a)].inverse();
        units::PowerTest t = units::is_pn_power(ratio, ctx, kAuxPrimes);
        if (!t.is_power)
          return fail("xi_a !~ xi_{-a} at p=" + std::to_string(p) + " a=" + std::to_string(a.a));
      }
    }
  return {};
}

// --------------------------------------------------------------------------
// 3. rank of the xi classes mod p-th powers equals s - 1

Outcome criterion_unit_rank() {
  struct Case {
    long p, n;
  };
  for (Case c : {Case{5, 1}, Case{7, 1}, Case{11, 1}, Case{5, 2}}) {
    CycParams P = CycParams::make(c.p, c.n);
    units::AuxPrimeCtx ctx(P);
    std::vector<CycClass> gens;
    for (const GaloisElt& a : cyc::galois_group(P)) gens.push_back(CycClass::of(units::xi(P, a)));
    int r = units::unit_rank_mod_p(gens, ctx);
    long s = P.degree / 2;
    if (r != s - 1)
      return fail("rank " + std::to_string(r) + " != s-1 = " + std::to_string(s - 1) + " at p=" +
                  std::to_string(c.p) + " n=" + std::to_string(c.n));
  }
  return {};
}

// --------------------------------------------------------------------------
// 4. wild-layer cohomology orders bounded by p, engines exactly equal

Outcome criterion_wild_layer() {
  for (long p : {5L, 7L})
    for (long n : {2L, 3L}) {
      auto G = share(FiniteGroup::one_plus_p(p, n));
      GModule M = GModule::tate_twist(G, p, n, 2);
      for (int d = 0; d <= 2; ++d) {
        la::ModStruct cy = cohom::cyclic_cohomology(M, d);
        la::ModStruct br = cohom::brute_cohomology(M, d);
        if (!(cy == br))
          return fail("engines disagree at p=" + std::to_string(p) + " n=" + std::to_string(n) +
                      " degree " + std::to_string(d) + ": " + show(cy) + " vs " + show(br));
        if (!(cy == specseq::one_plus_p_cohomology(p, n, d)))
          return fail("layer helper disagrees at p=" + std::to_string(p) +
                      " n=" + std::to_string(n) + " degree " + std::to_string(d));
        if (order_of(cy) > p)
          return fail("order " + std::to_string(order_of(cy)) + " exceeds p at p=" +
                      std::to_string(p) + " n=" + std::to_string(n) + " degree " +
                      std::to_string(d));
      }
    }
  return {};
}

// --------------------------------------------------------------------------
// 5. cyclic and bar-resolution engines agree on randomized instances

la::MatI random_invertible(long g, long long pm, std::mt19937_64& rng) {
  la::MatI T = la::MatI::identity(g);
  std::uniform_int_distribution<long> pick(0, g - 1);
  std::uniform_int_distribution<long long> coef(0, pm - 1);
  for (int step = 0; step < 4 * g; ++step) {
    long i = pick(rng), j = pick(rng);
    if (i == j) continue;
    long long c = coef(rng);
    for (long k = 0; k < g; ++k) T(i, k) = (T(i, k) + c * T(j, k)) % pm;
  }
  return T;
}

Outcome criterion_engine_equivalence() {
  std::mt19937_64 rng(0x5eed5eedULL);
  for (int trial = 0; trial < kRandomCyclicInstances; ++trial) {
    std::uniform_int_distribution<long> ord_d(1, 12), p_d(0, 1), g_d(1, 3);
    long order = ord_d(rng);
    long p = p_d(rng) == 0 ? 3 : 5;
    long g = g_d(rng);
    long m = p == 3 ? (g <= 2 ? 2 : 1) : 1;  // keep |A| <= 5^3
    long long pm = la::pow_ll(p, m);
    // diagonalizable action of exact order dividing the group order
    std::vector<long long> units;
    for (long long u = 1; u < pm; ++u) {
      if (u % p == 0) continue;
      long long x = 1;
      for (long i = 0; i < order; ++i) x = x * u % pm;
      if (x == 1) units.push_back(u);
    }
    std::uniform_int_distribution<size_t> u_d(0, units.size() - 1);
    la::MatI T = random_invertible(g, pm, rng);
    la::MatI D(g, g);
    for (long i = 0; i < g; ++i) D(i, i) = units[u_d(rng)];
    auto X = la::solve_mod_many(T, la::MatI::identity(g), p, m);
    if (!X) return fail("internal: elementary-product matrix failed to invert");
    la::MatI action = la::matmul_mod(la::matmul_mod(T, D, pm), *X, pm);
    // an invariant relation span: scaled images of the same eigenbasis
    std::uniform_int_distribution<long> k_d(0, m), keep(0, 2);
    std::vector<long long> cols;
    long ncols = 0;
    for (long i = 0; i < g; ++i) {
      if (keep(rng) == 0) continue;
      long k = k_d(rng);
      if (k == 0) continue;
      for (long r = 0; r < g; ++r) cols.push_back(T(r, i) * la::pow_ll(p, k) % pm);
      ++ncols;
    }
    la::MatI R(g, ncols);
    for (long j = 0; j < ncols; ++j)
      for (long i = 0; i < g; ++i) R(i, j) = cols[static_cast<size_t>(j) * g + i];

    auto Gp = share(FiniteGroup::cyclic(order));
    GModule M = GModule::cyclic_from_action(Gp, p, m, action, R);
    for (int d = 0; d <= 2; ++d) {
      la::ModStruct a = cohom::cyclic_cohomology(M, d);
      la::ModStruct b = cohom::brute_cohomology(M, d);
      if (!(a == b))
        return fail("engines disagree on trial " + std::to_string(trial) + " degree " +
                    std::to_string(d) + ": " + show(a) + " vs " + show(b));
    }
  }
  return {};
}

// --------------------------------------------------------------------------
// 6. coboundary solver and Heisenberg lifts

Outcome criterion_solver_and_lifts() {
  // (a) zero right-hand side: the reported coset has |A|/|H^0| distinct
  // members, each an actual solution; enumerated at p = 3, m = 1
  std::vector<std::shared_ptr<const GModule>> cases = {
      share(GModule::tate_twist(share(FiniteGroup::kummer_semidirect(3, 1)), 3, 1, 2)),
      share(GModule::tate_twist(share(FiniteGroup::units_mod(3, 1)), 3, 1, 1)),
      share(GModule::tate_twist(share(FiniteGroup::units_mod(3, 2)), 3, 1, 1)),
      share(GModule::trivial(share(FiniteGroup::cyclic(3)), 3, 1, 2)),
  };
  for (const auto& M : cases) {
    Cochain zero(M, 2);
    cohom::SolveOutcome out = cohom::solve_coboundary_eq(zero);
    auto* s = std::get_if<cohom::SolveSuccess>(&out);
    if (!s) return fail("zero cochain reported unsolvable");
    long long h0 = order_of(cohom::brute_cohomology(*M, 0));
    long long expected = la::pow_ll(3, M->rank()) / h0;
    if (s->coset_size != Int(static_cast<long>(expected)))
      return fail("coset size " + s->coset_size.get_str() + " != |A|/|H0| = " +
                  std::to_string(expected));
    long g = M->rank();
    long long combos = la::pow_ll(3, g);
    std::set<std::vector<long long>> seen;
    for (long long c = 0; c < combos; ++c) {
      Cochain member = s->alpha;
      long long rest = c;
      for (long i = 0; i < g; ++i, rest /= 3)
        member = member + s->coset_gens[static_cast<size_t>(i)].scaled(rest % 3);
      if (!(cohom::coboundary(member) == zero)) return fail("coset member is not a solution");
      seen.insert(member.raw());
    }
    if (static_cast<long long>(seen.size()) != expected)
      return fail("enumerated coset has " + std::to_string(seen.size()) + " members, expected " +
                  std::to_string(expected));
  }

  // (b) the order-9 extension cocycle over C_3: nonzero obstruction, and
  // exhaustive search confirms no 1-cochain solves it
  auto M3 = share(GModule::trivial(share(FiniteGroup::cyclic(3)), 3, 1, 1));
  Cochain carry(M3, 2);
  for (long i = 0; i < 3; ++i)
    for (long j = 0; j < 3; ++j) carry.set2(i, j, (i + j >= 3) ? 1 : 0);
  if (!cohom::is_cocycle(carry)) return fail("carry cochain is not a cocycle");
  cohom::SolveOutcome oc = cohom::solve_coboundary_eq(carry);
  auto* ob = std::get_if<cohom::Obstruction>(&oc);
  if (!ob) return fail("extension cocycle reported solvable");
  if (ob->cokernel_coords.empty()) return fail("obstruction has no nonzero coordinate");
  for (long a1 = 0; a1 < 3; ++a1)
    for (long a2 = 0; a2 < 3; ++a2) {
      Cochain alpha(M3, 1);
      alpha.set1(1, a1);
      alpha.set1(2, a2);
      if (cohom::coboundary(alpha) == carry)
        return fail("brute-force found a solution the solver missed");
    }

  // (c) every successful Kummer-model lift is a nonabelian cocycle and
  // abelianizes back to its input pair
  heis::CoordinateModel mdl = heis::kummer_model(3, 1);
  long lifts = 0, obstructed = 0;
  for (long c1 = 0; c1 < 3; ++c1)
    for (long c2 = 0; c2 < 3; ++c2)
      for (long d1 = 0; d1 < 3; ++d1)
        for (long d2 = 0; d2 < 3; ++d2) {
          Cochain phi = mdl.kx.scaled(c1) + mdl.ky.scaled(c2);
          Cochain psi = mdl.kx.scaled(d1) + mdl.ky.scaled(d2);
          heis::LiftOutcome out = heis::lift_pair(phi, psi);
          if (auto* kt = std::get_if<heis::HeisCochain>(&out)) {
            ++lifts;
            if (!heis::is_cocycle_nonab(*kt)) return fail("lift is not a nonabelian cocycle");
            auto [ax, ay] = heis::abelianize(*kt);
            if (!(ax == phi) || !(ay == psi)) return fail("lift does not abelianize to its pair");
          } else {
            ++obstructed;
          }
        }
  if (lifts == 0 || obstructed == 0)
    return fail("expected both lifted and obstructed pairs, got " + std::to_string(lifts) +
                "/" + std::to_string(obstructed));
  return {};
}

// --------------------------------------------------------------------------
// 7. valuation equivariance on random elements

Outcome criterion_valuation_equivariance() {
  CycParams P = CycParams::make(5, 1);
  vals::TildeT tt = vals::primes_above_set(P, {Int(11)});
  std::mt19937_64 rng(7117);
  std::uniform_int_distribution<long> coef(-10, 10);
  auto vof = [](const CycElt& x, const vals::PrimeAbove& Pa) {
    return Pa.ramified ? vals::pi_val(x) : vals::val_at(x, Pa);
  };
  for (int trial = 0; trial < kEquivariantSamples; ++trial) {
    std::vector<Int> coeffs(static_cast<size_t>(P.degree));
    bool nonzero = false;
    for (Int& c : coeffs) {
      c = Int(coef(rng));
      if (c != 0) nonzero = true;
    }
    if (!nonzero) {
      --trial;
      continue;
    }
    CycElt x(P, coeffs);
    std::vector<long> b = vals::val_vector(x, tt);
    for (const GaloisElt& a : cyc::galois_group(P)) {
      CycElt ax = cyc::galois_apply(a, x);
      for (const vals::PrimeAbove& Pa : tt.primes)
        if (vof(ax, vals::galois_on_prime(a, Pa)) != vof(x, Pa))
          return fail("place transport broke at alpha=" + std::to_string(a.a));
      // inverse-convention twisted action matches the star action on vectors
      CycElt acted = cyc::galois_apply(a.inverse(), x).pow(Int(a.inverse().a));
      if (vals::val_vector(acted, tt) != vals::star_act(a, b, tt))
        return fail("star equivariance broke at alpha=" + std::to_string(a.a));
    }
  }
  return {};
}

// --------------------------------------------------------------------------
// 8. generator preimages for a basis of the valuation target, units to zero

Outcome criterion_snake_surjectivity() {
  struct Case {
    long p;
    std::vector<Int> T;
  };
  std::vector<Case> cases = {{3, {Int(3)}}, {3, {Int(3), Int(7)}}, {5, {Int(5)}},
                             {5, {Int(5), Int(11)}}};
  for (const Case& c : cases) {
    CycParams P = CycParams::make(c.p, 1);
    vals::TildeT tt = vals::primes_above_set(P, c.T);
    for (size_t i = 0; i < tt.primes.size(); ++i) {
      auto gen = vals::prime_generator_search(tt.primes[i], kGeneratorBox);
      if (!gen)
        return fail("no generator found for " + tt.primes[i].label() + " at p=" +
                    std::to_string(c.p));
      if (gen->h % c.p == 0) return fail("generator height divisible by p");
      std::vector<long> v = vals::val_vector(gen->gen, tt);
      for (size_t j = 0; j < v.size(); ++j) {
        long want = (j == i) ? gen->h % P.pn : 0;
        if (v[j] != want)
          return fail("generator for " + tt.primes[i].label() + " is not supported there alone");
      }
      // diagonal value prime to p: the images form a basis of (Z/p)^places
    }
    for (const GaloisElt& a : cyc::galois_group(P)) {
      std::vector<long> v = vals::val_vector(units::xi(P, a), tt);
      for (long entry : v)
        if (entry != 0) return fail("unit class has nonzero valuation at p=" + std::to_string(c.p));
    }
    std::vector<long> vz = vals::val_vector(CycElt::zeta_pow(P, 1), tt);
    for (long entry : vz)
      if (entry != 0) return fail("zeta has nonzero valuation at p=" + std::to_string(c.p));
  }
  return {};
}

// --------------------------------------------------------------------------
// 9. norm-sum formula on random pairs

Outcome criterion_norm_sum() {
  CycParams P = CycParams::make(5, 1);
  std::vector<Int> pool = {Int(2),  Int(3),  Int(5),  Int(7),  Int(11),
                           Int(13), Int(19), Int(31), Int(41), Int(61)};
  std::mt19937_64 rng(900900);
  std::uniform_int_distribution<long> coef(-9, 9);
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  for (int trial = 0; trial < kNormSumSamples; ++trial) {
    std::vector<Int> coeffs(static_cast<size_t>(P.degree));
    bool nonzero = false;
    for (Int& c : coeffs) {
      c = Int(coef(rng));
      if (c != 0) nonzero = true;
    }
    if (!nonzero) {
      --trial;
      continue;
    }
    CycElt x(P, coeffs);
    const Int& q = pool[pick(rng)];
    long lhs = 0;
    for (const vals::PrimeAbove& Pa : vals::primes_above(P, q))
      lhs += Pa.f * (Pa.ramified ? vals::pi_val(x) : vals::val_at(x, Pa));
    Int N = cyc::abs_norm(x);
    long rhs = 0;
    while (N % q == 0) {
      N /= q;
      ++rhs;
    }
    if (lhs != rhs)
      return fail("norm sum " + std::to_string(lhs) + " != v_q(N) = " + std::to_string(rhs) +
                  " at q=" + q.get_str());
  }
  return {};
}

// --------------------------------------------------------------------------
// 10. regularity verdicts

Outcome criterion_regularity() {
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    reg::RegularityReport r = reg::is_regular(p);
    if (!r.regular || !r.irregular_indices.empty())
      return fail("p=" + std::to_string(p) + " not reported regular");
  }
  reg::RegularityReport r37 = reg::is_regular(37);
  if (r37.regular || r37.irregular_indices != std::vector<long>{32})
    return fail("p=37 irregular index list wrong");
  return {};
}

}  // namespace

int main() {
  struct Row {
    const char* name;
    std::function<Outcome()> run;
    double limit_sec;  // 0 = no pinned runtime ceiling
  };
  std::vector<Row> rows = {
      {"xi identities, exact, all a and beta", criterion_xi_identities, kXiRuntimeLimitSec},
      {"twisted congruences mod p^n-th powers", criterion_twisted_congruences,
       kTwistedRuntimeLimitSec},
      {"xi-class rank equals s-1", criterion_unit_rank, 0},
      {"wild-layer cohomology bounded by p, engines equal", criterion_wild_layer, 0},
      {"engines agree on randomized cyclic instances", criterion_engine_equivalence, 0},
      {"coboundary solver cosets, obstruction, Heisenberg lifts", criterion_solver_and_lifts,
       kLiftRuntimeLimitSec},
      {"valuation equivariance on random elements", criterion_valuation_equivariance, 0},
      {"generator preimages span the valuation target", criterion_snake_surjectivity, 0},
      {"norm-sum formula on random pairs", criterion_norm_sum, 0},
      {"regularity verdicts", criterion_regularity, 0},
  };

  int failures = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = rows[i].run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && rows[i].limit_sec > 0 && sec > rows[i].limit_sec)
      o = fail("runtime " + std::to_string(sec) + "s exceeds the pinned ceiling of " +
               std::to_string(rows[i].limit_sec) + "s");
    std::printf("criterion %2zu: %-55s %s  (%.1fs)\n", i + 1, rows[i].name,
                o.pass ? "PASS" : "FAIL", sec);
    if (!o.pass) {
      std::printf("              %s\n", o.detail.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  if (failures) std::printf("%d of %zu criteria failed\n", failures, rows.size());
  return failures == 0 ? 0 : 1;
}
