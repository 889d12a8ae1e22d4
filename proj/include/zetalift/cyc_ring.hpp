#pragma once

#include <optional>
#include <vector>

#include "zetalift/base.hpp"

// Exact arithmetic in Z[zeta] for zeta a primitive p^n-th root of unity, p an
// odd prime. Elements are integer vectors on the power basis 1, zeta, ...,
// zeta^(phi-1) with phi = p^(n-1)(p-1), kept reduced modulo the minimal
// polynomial sum_{i<p} x^(i*p^(n-1)).
namespace zetalift::cyc {

struct CycParams {
  long p = 0;
  long n = 0;
  long degree = 0;  // phi(p^n)
  long pn = 0;      // p^n

  static CycParams make(long p, long n);
  bool operator==(const CycParams& o) const { return p == o.p && n == o.n; }
  bool operator!=(const CycParams& o) const { return !(*this == o); }
};

// A unit residue a mod p^n, acting by zeta -> zeta^a.
struct GaloisElt {
  long a = 1;
  long pn = 0;

  GaloisElt() = default;
  GaloisElt(long a, const CycParams& P);
  GaloisElt inverse() const;
  GaloisElt operator*(const GaloisElt& o) const;
  bool operator==(const GaloisElt& o) const { return a == o.a && pn == o.pn; }
};

std::vector<GaloisElt> galois_group(const CycParams& P);

class CycElt {
public:
  CycElt(CycParams P, std::vector<Int> coeffs);  // reduces, any input length
  static CycElt zero(const CycParams& P);
  static CycElt one(const CycParams& P);
  static CycElt from_int(const CycParams& P, Int v);
  static CycElt zeta_pow(const CycParams& P, long k);  // zeta^k, any integer k

  const CycParams& params() const { return P_; }
  const std::vector<Int>& coeffs() const { return c_; }
  bool is_zero() const;

  CycElt operator+(const CycElt& o) const;
  CycElt operator-(const CycElt& o) const;
  CycElt operator-() const;
  CycElt operator*(const CycElt& o) const;
  bool operator==(const CycElt& o) const;
  bool operator!=(const CycElt& o) const { return !(*this == o); }
  CycElt pow(const Int& e) const;  // e >= 0

private:
  CycParams P_;
  std::vector<Int> c_;  // length = degree, reduced
};

CycElt galois_apply(const GaloisElt& s, const CycElt& x);

// Product of all Galois conjugates; lands in Z. Multiplicative, and equals
// +-1 exactly on units (positive here since the field is totally imaginary).
Int abs_norm(const CycElt& x);

// Exact division in Z[zeta]: nullopt when y does not divide x. Throws on y = 0.
std::optional<CycElt> try_div_exact(const CycElt& x, const CycElt& y);
CycElt div_exact(const CycElt& x, const CycElt& y);
// Inverse of a unit (abs_norm +-1); throws not_invertible otherwise.
CycElt unit_inverse(const CycElt& u);

}  // namespace zetalift::cyc
