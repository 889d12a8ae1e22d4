#include "zetalift/spec_seq.hpp"

#include <map>
#include <memory>
#include <utility>

#include "zetalift/regular.hpp"

namespace zetalift::specseq {

using cohom::FiniteGroup;
using cohom::GModule;
using cyc::CycElt;
using cyc::CycParams;
using cyc::GaloisElt;
using units::AuxPrime;
using units::CycClass;

namespace {

void check_degree(int degree) {
  if (degree < 0 || degree > 3)
    throw Error(Error::Kind::bad_input, "cohomology degree must be between 0 and 3");
}

std::shared_ptr<const FiniteGroup> share(FiniteGroup g) {
  return std::make_shared<const FiniteGroup>(std::move(g));
}

}  // namespace

la::ModStruct e2_row0(long p, long n, long m, int degree) {
  check_odd_prime(p);
  check_degree(degree);
  if (n < 1) throw Error(Error::Kind::bad_input, "e2_row0: n must be positive");
  if (m < 1 || m > n) throw Error(Error::Kind::bad_input, "e2_row0: m must be between 1 and n");
  auto G = share(FiniteGroup::units_mod(p, n));
  auto M = GModule::tate_twist(G, p, m, 2);
  return cohom::cyclic_cohomology(M, degree);
}

la::ModStruct one_plus_p_cohomology(long p, long n, int degree) {
  check_odd_prime(p);
  check_degree(degree);
  if (n < 1) throw Error(Error::Kind::bad_input, "one_plus_p_cohomology: n must be positive");
  auto G = share(FiniteGroup::one_plus_p(p, n));
  auto M = GModule::tate_twist(G, p, n, 2);
  la::ModStruct res = cohom::cyclic_cohomology(M, degree);
  for (long long o : res.cyclic_orders)
    if (o > p) throw Error(Error::Kind::internal, "wild layer: cyclic order exceeds p");
  if (G->size() > 1) {
    // the square of the distinguished generator also generates (p is odd)
    la::ModStruct cross =
        cohom::cyclic_cohomology_core(M.action(2), G->size(), p, n, M.relations(), degree);
    if (!(cross == res))
      throw Error(Error::Kind::internal, "wild layer: generators disagree");
  }
  return res;
}

namespace {

// Smallest residue generating (Z/p^n)^*.
long smallest_generator(const CycParams& P) {
  for (long g = 2; g < P.pn; ++g) {
    if (g % P.p == 0) continue;
    long long x = g % P.pn;
    long ord = 1;
    while (x != 1) {
      x = (x * g) % P.pn;
      ++ord;
    }
    if (ord == P.degree) return g;
  }
  throw Error(Error::Kind::internal, "no generator of (Z/p^n)^*");
}

std::vector<long> class_val_vector(const CycClass& c, const vals::TildeT& tt,
                                   const vals::ValOptions& vopt) {
  long pn = c.params().pn;
  std::vector<long> v(tt.primes.size(), 0);
  for (const auto& f : c.factors()) {
    std::vector<long> bv = vals::val_vector(f.base, tt, vopt);
    long e = to_long(mod_norm(f.exp, Int(pn)));
    for (size_t i = 0; i < v.size(); ++i) v[i] = static_cast<long>((v[i] + static_cast<long long>(e) * bv[i]) % pn);
  }
  return v;
}

}  // namespace

E11Presentation e11_assemble(long p, long n, const std::vector<Int>& T, const E11Options& opt) {
  check_odd_prime(p);
  if (n < 1) throw Error(Error::Kind::bad_input, "e11_assemble: n must be positive");

  reg::RegularityReport rep = reg::is_regular(p);
  if (!rep.regular) {
    std::string msg = "e11_assemble: p = " + std::to_string(p) + " is irregular at indices";
    for (long k : rep.irregular_indices) msg += " " + std::to_string(k);
    throw Error(Error::Kind::irregular_prime, msg);
  }

  bool has_p = false;
  for (const Int& q : T) has_p = has_p || q == p;
  if (!has_p) throw Error(Error::Kind::bad_input, "e11_assemble: T must contain p");

  CycParams P = CycParams::make(p, n);
  vals::ValOptions vopt;
  vals::TildeT tt = vals::primes_above_set(P, T, opt.seed);

  // --- generators ---------------------------------------------------------
  std::vector<std::string> labels;
  std::vector<CycElt> elts;

  labels.push_back("zeta");
  elts.push_back(CycElt::zeta_pow(P, 1));
  for (long a = 2; a <= (P.pn - 1) / 2; ++a) {
    if (a % p == 0) continue;
    labels.push_back("xi_" + std::to_string(a));
    elts.push_back(units::xi(P, GaloisElt(a, P)));
  }
  long unit_gens = static_cast<long>(elts.size());

  // one generator per place: a box search for the first place over each q,
  // Galois transport for the rest of its orbit
  std::map<Int, std::pair<vals::PrimeAbove, CycElt>> first_over;
  std::vector<std::string> place_labels;
  for (const vals::PrimeAbove& Pa : tt.primes) {
    auto seen = first_over.find(Pa.q);
    if (seen == first_over.end()) {
      auto res = vals::prime_generator_search(Pa, opt.search_box, vopt);
      if (!res)
        throw Error(Error::Kind::not_found,
                    "e11_assemble: no generator for " + Pa.label() + " in box " +
                        std::to_string(opt.search_box));
      first_over.emplace(Pa.q, std::make_pair(Pa, res->gen));
      labels.push_back(Pa.label());
      elts.push_back(res->gen);
    } else {
      bool moved = false;
      for (const GaloisElt& alpha : cyc::galois_group(P)) {
        if (vals::galois_on_prime(alpha, seen->second.first) == Pa) {
          labels.push_back(Pa.label());
          elts.push_back(cyc::galois_apply(alpha, seen->second.second));
          moved = true;
          break;
        }
      }
      if (!moved) throw Error(Error::Kind::internal, "e11_assemble: place orbit transport failed");
    }
    place_labels.push_back(Pa.label());
  }
  long g = static_cast<long>(elts.size());

  // --- the twisted action of gamma on each generator ----------------------
  long gamma = smallest_generator(P);
  GaloisElt g_gamma(gamma, P);
  std::vector<CycClass> classes, targets;
  for (const CycElt& e : elts) classes.push_back(CycClass::of(e));
  for (const CycClass& c : classes)
    targets.push_back(units::twisted_act(g_gamma, c, units::Convention::direct));

  units::AuxPrimeCtx ctx(P, opt.seed);
  auto admissible = [&](const AuxPrime& ap) {
    for (const CycClass& c : classes)
      if (!units::class_dlog(c, ap, n)) return false;
    for (const CycClass& c : targets)
      if (!units::class_dlog(c, ap, n)) return false;
    return true;
  };

  std::vector<AuxPrime> rows;
  size_t scan = 0;
  la::MatI D;
  long need = g + opt.extra_primes;
  const size_t scan_cap = static_cast<size_t>(20 * need + 200);
  for (int round = 0; round < 3; ++round) {
    while (static_cast<long>(rows.size()) < need && scan < scan_cap) {
      AuxPrime ap = ctx.prime(scan++);
      if (admissible(ap)) rows.push_back(ap);
    }
    if (static_cast<long>(rows.size()) < need)
      throw Error(Error::Kind::insufficient_primes,
                  "e11_assemble: not enough admissible auxiliary primes");
    D = la::MatI(static_cast<long>(rows.size()), g);
    for (long r = 0; r < D.rows; ++r)
      for (long j = 0; j < g; ++j) D(r, j) = *units::class_dlog(classes[j], rows[r], n);
    if (la::kernel_mod(D, p, n).cols == 0) break;
    need += g;  // ambiguous expressions: widen the prime set
    if (round == 2)
      throw Error(Error::Kind::insufficient_primes,
                  "e11_assemble: discrete logs do not separate the generators");
  }

  la::MatI Y(D.rows, g);
  for (long r = 0; r < D.rows; ++r)
    for (long j = 0; j < g; ++j) Y(r, j) = *units::class_dlog(targets[j], rows[r], n);
  std::optional<la::MatI> E = la::solve_mod_many(D, Y, p, n);
  if (!E) throw Error(Error::Kind::internal, "e11_assemble: action escaped the generator span");

  // certification: the residual class of each expressed image is a p^n-th power
  for (long j = 0; j < g; ++j) {
    CycClass expr = CycClass::one(P);
    for (long i = 0; i < g; ++i) expr = expr * classes[i].pow(Int(static_cast<long>((*E)(i, j))));
    CycClass residual = targets[j] * expr.inverse();
    units::PowerTest pt = units::is_pn_power(residual, ctx, opt.confidence);
    if (!pt.is_power)
      throw Error(Error::Kind::internal,
                  "e11_assemble: certification failed for " + labels[j]);
  }

  // --- valuation layer checks ---------------------------------------------
  long pn = P.pn;
  std::vector<std::vector<long>> vv(elts.size());
  for (size_t j = 0; j < elts.size(); ++j) vv[j] = vals::val_vector(elts[j], tt, vopt);
  for (long j = 0; j < unit_gens; ++j)
    for (long x : vv[static_cast<size_t>(j)])
      if (x != 0) throw Error(Error::Kind::internal, "e11_assemble: unit generator has support");

  la::MatI V(static_cast<long>(tt.primes.size()), g - unit_gens);
  for (long j = unit_gens; j < g; ++j)
    for (size_t i = 0; i < tt.primes.size(); ++i)
      V(static_cast<long>(i), j - unit_gens) = vv[static_cast<size_t>(j)][i];
  la::SnfModResult vs = la::snf_mod(V, p, 1, false, false);
  for (long d : vs.diag_val)
    if (d != 0)
      throw Error(Error::Kind::internal, "e11_assemble: place generators miss the valuation lattice");

  for (long j = 0; j < g; ++j) {
    std::vector<long> tv = class_val_vector(targets[j], tt, vopt);
    // honest transport: the direct action of gamma moves valuations by the
    // star action of gamma^{-1}
    std::vector<long> sv = vals::star_act(g_gamma.inverse(), vv[static_cast<size_t>(j)], tt);
    if (tv != sv) throw Error(Error::Kind::internal, "e11_assemble: valuation transport mismatch");
    for (size_t i = 0; i < tt.primes.size(); ++i) {
      long long acc = 0;
      for (long k = 0; k < g; ++k) acc += static_cast<long long>(vv[static_cast<size_t>(k)][i]) * (*E)(k, j);
      if (((acc - tv[i]) % pn + pn) % pn != 0)
        throw Error(Error::Kind::internal, "e11_assemble: action matrix breaks the valuation layer");
    }
  }

  E11Presentation pres;
  pres.p = p;
  pres.n = n;
  pres.T = tt.T;
  pres.gen_labels = std::move(labels);
  pres.unit_gens = unit_gens;
  pres.gamma = gamma;
  pres.action = la::mat_mod(*E, pn);
  pres.place_labels = std::move(place_labels);
  return pres;
}

la::ModStruct e11_cohomology(const E11Presentation& pres, int degree) {
  check_degree(degree);
  long phi = la::pow_ll(pres.p, pres.n - 1) * (pres.p - 1);
  return cohom::cyclic_cohomology_core(pres.action, phi, pres.p, pres.n,
                                       la::MatI(pres.action.rows, 0), degree);
}

}  // namespace zetalift::specseq
