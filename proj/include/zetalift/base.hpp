#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zetalift {

using Int = mpz_class;
using Rat = mpq_class;

// Failure modes that violate an operation's contract. Value-like outcomes
// (an element that is simply not divisible, a search that finds nothing, a
// coboundary equation with an obstruction) are returned, not thrown.
class Error : public std::runtime_error {
public:
  enum class Kind {
    bad_input,          // malformed or out-of-contract parameters
    divide_by_zero,
    not_invertible,
    not_a_cocycle,
    not_cyclic,
    precision_ceiling,  // q-adic working precision exhausted
    size_ceiling,       // cochain table would exceed the configured bound
    factoring_failure,  // norm factorization beyond the supported bound
    insufficient_primes,
    not_found,          // a required search exhausted its budget
    irregular_prime,    // operation requires a regular p
    internal
  };

  Error(Kind k, std::string msg) : std::runtime_error(std::move(msg)), kind_(k) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

inline Int modpow(const Int& base, const Int& exp, const Int& mod) {
  if (exp < 0) throw Error(Error::Kind::bad_input, "modpow: negative exponent");
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

inline Int invmod(const Int& a, const Int& m) {
  Int r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
    throw Error(Error::Kind::not_invertible,
                "invmod: " + a.get_str() + " is not invertible mod " + m.get_str());
  return r;
}

// Least nonnegative residue.
inline Int mod_norm(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

inline bool is_prime(const Int& n) {
  // reps = 40 keeps this deterministic in practice for the desk-scale inputs here.
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

inline long to_long(const Int& a) {
  if (!a.fits_slong_p()) throw Error(Error::Kind::bad_input, "value does not fit in long");
  return a.get_si();
}

inline Int pow_int(long b, long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(e));
  return r;
}

// Validates the (p, n) shape shared by every cyclotomic-level operation.
inline void check_odd_prime(long p) {
  if (p < 3 || !is_prime(Int(p)))
    throw Error(Error::Kind::bad_input, "p must be an odd prime, got " + std::to_string(p));
}

}  // namespace zetalift
