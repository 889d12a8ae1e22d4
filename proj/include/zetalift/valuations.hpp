#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zetalift/cyc_ring.hpp"
#include "zetalift/polymod.hpp"

// Primes of Z[zeta] above a rational prime q, q-adic valuations computed by
// Hensel-lifting the corresponding factor of the minimal polynomial, and the
// valuation-vector calculus on a finite set of places.
namespace zetalift::vals {

struct PrimeAbove {
  cyc::CycParams P;
  Int q;         // rational prime below
  poly::Poly g;  // monic irreducible factor of Phi mod q (x - 1 when ramified)
  long f = 0;    // residue degree
  bool ramified = false;

  bool operator==(const PrimeAbove& o) const {
    return P == o.P && q == o.q && g == o.g;
  }
  std::string label() const;
};

// All primes above q, canonically ordered by the factor's coefficient tuple
// (constant term first). q = p yields the single ramified place.
std::vector<PrimeAbove> primes_above(const cyc::CycParams& P, const Int& q,
                                     std::uint64_t seed = 0);

struct ValOptions {
  long precision_ceiling = 64;  // largest allowed exponent K in q^K
};

// v_P(x) for unramified P; exact, raises working precision as needed.
long val_at(const cyc::CycElt& x, const PrimeAbove& Pa, const ValOptions& opt = {});
// Valuation at the ramified place, by repeated exact division by 1 - zeta.
long pi_val(const cyc::CycElt& x);

// The ordered set of places above T (T must be rational primes; if p is in T
// the ramified place comes first).
struct TildeT {
  cyc::CycParams P;
  std::vector<Int> T;
  std::vector<PrimeAbove> primes;
  std::optional<size_t> index_of(const PrimeAbove& Pa) const;
};

TildeT primes_above_set(const cyc::CycParams& P, std::vector<Int> T,
                        std::uint64_t seed = 0);

// Componentwise valuations reduced mod p^n, indexed like tt.primes.
std::vector<long> val_vector(const cyc::CycElt& x, const TildeT& tt,
                             const ValOptions& opt = {});

// Transport of places: the image of P under zeta -> zeta^alpha.
PrimeAbove galois_on_prime(const cyc::GaloisElt& alpha, const PrimeAbove& Pa);

// (alpha star b)(P) = alpha^(-1) * b(alpha(P)), matching the inverse-convention
// twisted action on elements: val_vector(alpha act x) = alpha star val_vector(x).
std::vector<long> star_act(const cyc::GaloisElt& alpha, const std::vector<long>& b,
                           const TildeT& tt);

struct FactorOptions {
  long trial_bound = 100000;
  Int composite_limit = (Int(1) << 64);  // beyond this, unsplit composites fail
};

// Prime factorization of N > 0 (trial division, then Pollard rho).
std::vector<std::pair<Int, long>> factor_positive(const Int& N,
                                                  const FactorOptions& opt = {});

// Membership in E_T: all valuations outside the places above T are 0 mod p^n.
bool is_in_E(const cyc::CycElt& x, const std::vector<Int>& T,
             const FactorOptions& fopt = {}, const ValOptions& vopt = {});

struct GeneratorResult {
  cyc::CycElt gen;
  long h = 0;  // v_P(gen), coprime to p; all other valuations vanish
};

// Box search for an element supported only at Pa; nullopt when the box holds
// no such element. Ramified and inert places have canonical generators.
std::optional<GeneratorResult> prime_generator_search(const PrimeAbove& Pa, long box = 3,
                                                      const ValOptions& opt = {});

}  // namespace zetalift::vals
