#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zetalift/cyc_ring.hpp"

// Cyclotomic units xi_a = zeta^((1-a)/2) (1-zeta^a)/(1-zeta), lazy classes
// modulo p^n-th powers, and the auxiliary-prime residue machinery that makes
// the classes computable: for l = 1 mod p^n, evaluation at a root of the
// minimal polynomial mod l sends a class to F_l^* / (F_l^*)^(p^n).
namespace zetalift::units {

// (1-a)/2 is computed with the inverse of 2 mod p^n.
cyc::CycElt xi(const cyc::CycParams& P, const cyc::GaloisElt& a);

// Exact identity beta(xi_a) * xi_beta = xi_{beta*a} in Z[zeta].
bool verify_xi_galois(const cyc::CycParams& P, const cyc::GaloisElt& beta,
                      const cyc::GaloisElt& a);

struct ClassFactor {
  cyc::CycElt base;
  Int exp;  // reduced to [0, p^n)
};

// Formal product of ring elements with exponents mod p^n, representing a
// class in Q(zeta)^* / (Q(zeta)^*)^(p^n). Never expanded.
class CycClass {
public:
  explicit CycClass(cyc::CycParams P) : P_(P) {}
  static CycClass one(const cyc::CycParams& P) { return CycClass(P); }
  static CycClass of(cyc::CycElt b, Int e = Int(1));

  const cyc::CycParams& params() const { return P_; }
  const std::vector<ClassFactor>& factors() const { return f_; }

  CycClass operator*(const CycClass& o) const;
  CycClass inverse() const;
  CycClass pow(const Int& e) const;
  bool operator==(const CycClass& o) const;

private:
  void push(const cyc::CycElt& b, const Int& e);
  cyc::CycParams P_;
  std::vector<ClassFactor> f_;  // merged bases, no zero exponents
};

struct AuxPrime {
  Int ell;    // rational prime, ell = 1 mod p^n
  Int zroot;  // element of exact order p^n in F_ell^*
};

// Deterministic ascending supply of auxiliary primes. The seed is carried for
// downstream randomized consumers; the prime list itself is canonical.
class AuxPrimeCtx {
public:
  explicit AuxPrimeCtx(cyc::CycParams P, std::uint64_t seed = 0);
  const cyc::CycParams& params() const { return P_; }
  std::uint64_t seed() const { return seed_; }
  const AuxPrime& prime(size_t i);

private:
  cyc::CycParams P_;
  std::uint64_t seed_;
  Int k_;  // next candidate is 1 + k * p^n
  std::vector<AuxPrime> primes_;
};

// Value of the class in F_ell^*; nullopt when some base vanishes at the
// chosen prime above ell (the prime is inadmissible for this query).
std::optional<Int> class_residue(const CycClass& c, const AuxPrime& ap);

// Discrete log of the image of c in the order-p^k quotient of F_ell^*,
// taken to base zroot^(p^(n-k)). nullopt when the prime is inadmissible.
std::optional<long> class_dlog(const CycClass& c, const AuxPrime& ap, long k);

struct PowerTest {
  bool is_power = false;
  std::optional<Int> witness;  // refuting auxiliary prime
};

// One-sided Monte Carlo: false answers carry a checkable witness, true
// answers hold except with probability ~p^(-confidence).
PowerTest is_pn_power(const CycClass& c, AuxPrimeCtx& ctx, int confidence = 20);

enum class Convention {
  direct,   // beta act a = beta(a)^beta
  inverse,  // alpha act a = alpha^(-1)(a)^(alpha^(-1))
};

// The two conventions agree after precomposing with inversion.
CycClass twisted_act(const cyc::GaloisElt& g, const CycClass& c,
                     Convention conv = Convention::direct);

struct RankOptions {
  int window = 5;       // stop when the rank is stable this long
  int max_primes = 400;
};

// F_p-rank of the span of the classes in E/E^p, via discrete logs at
// auxiliary primes; may understate, never overstates.
int unit_rank_mod_p(const std::vector<CycClass>& gens, AuxPrimeCtx& ctx,
                    const RankOptions& opt = {});

}  // namespace zetalift::units
