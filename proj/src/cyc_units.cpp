#include "zetalift/cyc_units.hpp"

#include <algorithm>

namespace zetalift::units {

using cyc::CycElt;
using cyc::CycParams;
using cyc::GaloisElt;

CycElt xi(const CycParams& P, const GaloisElt& a) {
  if (a.pn != P.pn) throw Error(Error::Kind::bad_input, "xi: Galois element at wrong level");
  long inv2 = to_long(invmod(Int(2), Int(P.pn)));
  long e = static_cast<long>(((1 - static_cast<long long>(a.a)) % P.pn) * inv2 % P.pn);
  // (1 - zeta^a)/(1 - zeta) = 1 + zeta + ... + zeta^(a-1) for the canonical
  // representative a in [1, p^n).
  std::vector<Int> geom(static_cast<size_t>(a.a), Int(1));
  return CycElt::zeta_pow(P, e) * CycElt(P, std::move(geom));
}

bool verify_xi_galois(const CycParams& P, const GaloisElt& beta, const GaloisElt& a) {
  CycElt lhs = galois_apply(beta, xi(P, a)) * xi(P, beta);
  return lhs == xi(P, beta * a);
}

CycClass CycClass::of(CycElt b, Int e) {
  if (b.is_zero()) throw Error(Error::Kind::bad_input, "CycClass: zero base");
  CycClass c(b.params());
  c.push(b, e);
  return c;
}

void CycClass::push(const CycElt& b, const Int& e) {
  Int er = mod_norm(e, Int(P_.pn));
  if (er == 0) return;
  for (auto& f : f_) {
    if (f.base == b) {
      f.exp = mod_norm(f.exp + er, Int(P_.pn));
      return;
    }
  }
  f_.push_back({b, er});
}

CycClass CycClass::operator*(const CycClass& o) const {
  if (P_ != o.P_) throw Error(Error::Kind::bad_input, "mixed cyclotomic levels");
  CycClass r = *this;
  for (const auto& f : o.f_) r.push(f.base, f.exp);
  r.f_.erase(std::remove_if(r.f_.begin(), r.f_.end(),
                            [](const ClassFactor& f) { return f.exp == 0; }),
             r.f_.end());
  return r;
}

CycClass CycClass::inverse() const {
  CycClass r(P_);
  for (const auto& f : f_) r.push(f.base, -f.exp);
  return r;
}

CycClass CycClass::pow(const Int& e) const {
  CycClass r(P_);
  for (const auto& f : f_) r.push(f.base, f.exp * e);
  return r;
}

bool CycClass::operator==(const CycClass& o) const {
  if (P_ != o.P_ || f_.size() != o.f_.size()) return false;
  for (const auto& f : f_) {
    bool found = false;
    for (const auto& g : o.f_)
      if (f.base == g.base && f.exp == g.exp) { found = true; break; }
    if (!found) return false;
  }
  return true;
}

AuxPrimeCtx::AuxPrimeCtx(CycParams P, std::uint64_t seed) : P_(P), seed_(seed), k_(1) {}

const AuxPrime& AuxPrimeCtx::prime(size_t i) {
  while (primes_.size() <= i) {
    Int pn(P_.pn);
    Int ell = 1 + k_ * pn;
    k_ += 1;
    if (!is_prime(ell)) continue;
    Int cof = (ell - 1) / pn;
    Int pn1 = pn / P_.p;
    AuxPrime ap;
    ap.ell = ell;
    for (Int g = 2;; g += 1) {
      Int t = modpow(g, cof, ell);
      if (t != 1 && modpow(t, pn1, ell) != 1) {
        ap.zroot = t;
        break;
      }
    }
    primes_.push_back(std::move(ap));
  }
  return primes_[i];
}

namespace {

Int elt_residue(const CycElt& x, const AuxPrime& ap) {
  Int r = 0;
  const auto& c = x.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = mod_norm(r * ap.zroot + *it, ap.ell);
  return r;
}

}  // namespace

std::optional<Int> class_residue(const CycClass& c, const AuxPrime& ap) {
  Int r = 1;
  for (const auto& f : c.factors()) {
    Int b = elt_residue(f.base, ap);
    if (b == 0) return std::nullopt;
    r = r * modpow(b, f.exp, ap.ell) % ap.ell;
  }
  return r;
}

std::optional<long> class_dlog(const CycClass& c, const AuxPrime& ap, long k) {
  const CycParams& P = c.params();
  if (k < 1 || k > P.n) throw Error(Error::Kind::bad_input, "class_dlog: bad exponent level");
  auto r = class_residue(c, ap);
  if (!r) return std::nullopt;
  long pk = 1;
  for (long i = 0; i < k; ++i) pk *= P.p;
  Int t = modpow(*r, (ap.ell - 1) / pk, ap.ell);
  Int w = modpow(ap.zroot, Int(P.pn / pk), ap.ell);
  Int acc = 1;
  for (long e = 0; e < pk; ++e) {
    if (acc == t) return e;
    acc = acc * w % ap.ell;
  }
  throw Error(Error::Kind::internal, "class_dlog: residue outside the cyclic subgroup");
}

PowerTest is_pn_power(const CycClass& c, AuxPrimeCtx& ctx, int confidence) {
  if (confidence < 1) throw Error(Error::Kind::bad_input, "is_pn_power: confidence < 1");
  const Int pn(c.params().pn);
  int used = 0;
  size_t i = 0;
  size_t budget = static_cast<size_t>(confidence) * 60;
  for (; used < confidence; ++i) {
    if (i >= budget)
      throw Error(Error::Kind::insufficient_primes,
                  "is_pn_power: no admissible auxiliary primes available");
    const AuxPrime& ap = ctx.prime(i);
    auto r = class_residue(c, ap);
    if (!r) continue;
    ++used;
    if (modpow(*r, (ap.ell - 1) / pn, ap.ell) != 1) return {false, ap.ell};
  }
  return {true, std::nullopt};
}

CycClass twisted_act(const GaloisElt& g, const CycClass& c, Convention conv) {
  GaloisElt s = (conv == Convention::direct) ? g : g.inverse();
  CycClass acted(c.params());
  for (const auto& f : c.factors())
    acted = acted * CycClass::of(galois_apply(s, f.base), f.exp * s.a);
  return acted;
}

int unit_rank_mod_p(const std::vector<CycClass>& gens, AuxPrimeCtx& ctx,
                    const RankOptions& opt) {
  if (gens.empty()) return 0;
  const long p = gens[0].params().p;
  for (const auto& g : gens)
    if (g.params() != gens[0].params())
      throw Error(Error::Kind::bad_input, "unit_rank_mod_p: mixed cyclotomic levels");

  // Incremental row reduction over F_p; rows are dlog vectors per prime.
  std::vector<std::vector<long>> basis;  // reduced, each with a leading pivot
  int stable = 0;
  for (int i = 0; i < opt.max_primes; ++i) {
    if (static_cast<int>(basis.size()) == static_cast<int>(gens.size())) break;
    if (stable >= opt.window) break;
    const AuxPrime& ap = ctx.prime(static_cast<size_t>(i));
    std::vector<long> row(gens.size());
    bool ok = true;
    for (size_t j = 0; j < gens.size(); ++j) {
      auto d = class_dlog(gens[j], ap, 1);
      if (!d) { ok = false; break; }
      row[j] = *d;
    }
    if (!ok) continue;
    // reduce against the basis
    for (const auto& b : basis) {
      size_t piv = 0;
      while (piv < b.size() && b[piv] == 0) ++piv;
      if (piv < row.size() && row[piv] != 0) {
        long f = row[piv] * to_long(invmod(Int(b[piv]), Int(p))) % p;
        for (size_t j = piv; j < row.size(); ++j) row[j] = ((row[j] - f * b[j]) % p + p) % p;
      }
    }
    if (std::any_of(row.begin(), row.end(), [](long v) { return v != 0; })) {
      basis.push_back(row);
      std::sort(basis.begin(), basis.end(), [](const auto& a, const auto& b) {
        auto pa = std::find_if(a.begin(), a.end(), [](long v) { return v != 0; }) - a.begin();
        auto pb = std::find_if(b.begin(), b.end(), [](long v) { return v != 0; }) - b.begin();
        return pa < pb;
      });
      stable = 0;
    } else {
      ++stable;
    }
  }
  if (static_cast<int>(basis.size()) < static_cast<int>(gens.size()) && stable < opt.window)
    throw Error(Error::Kind::insufficient_primes, "unit_rank_mod_p: prime budget exhausted");
  return static_cast<int>(basis.size());
}

}  // namespace zetalift::units
