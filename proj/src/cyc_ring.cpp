#include "zetalift/cyc_ring.hpp"

#include <numeric>

namespace zetalift::cyc {

CycParams CycParams::make(long p, long n) {
  check_odd_prime(p);
  if (n < 1) throw Error(Error::Kind::bad_input, "cyclotomic level n must be >= 1");
  CycParams P;
  P.p = p;
  P.n = n;
  long pn1 = 1;
  for (long i = 1; i < n; ++i) {
    pn1 *= p;
    if (pn1 > (1L << 22)) throw Error(Error::Kind::bad_input, "p^n too large");
  }
  P.degree = pn1 * (p - 1);
  P.pn = pn1 * p;
  if (P.degree > (1L << 14)) throw Error(Error::Kind::bad_input, "phi(p^n) too large");
  return P;
}

GaloisElt::GaloisElt(long a_in, const CycParams& P) : pn(P.pn) {
  a = a_in % pn;
  if (a < 0) a += pn;
  if (a == 0 || std::gcd(a, P.p) != 1)
    throw Error(Error::Kind::bad_input, "Galois element must be a unit mod p^n");
}

GaloisElt GaloisElt::inverse() const {
  GaloisElt r;
  r.pn = pn;
  r.a = to_long(invmod(Int(a), Int(pn)));
  return r;
}

GaloisElt GaloisElt::operator*(const GaloisElt& o) const {
  if (pn != o.pn) throw Error(Error::Kind::bad_input, "Galois elements at different levels");
  GaloisElt r;
  r.pn = pn;
  r.a = static_cast<long>((static_cast<long long>(a) * o.a) % pn);
  return r;
}

std::vector<GaloisElt> galois_group(const CycParams& P) {
  std::vector<GaloisElt> g;
  for (long a = 1; a < P.pn; ++a)
    if (a % P.p != 0) g.emplace_back(a, P);
  return g;
}

namespace {

// Rewrites zeta^d for d >= phi via zeta^phi = -sum_{i<p-1} zeta^(i*p^(n-1)).
// Buffer may have any length; result has exactly P.degree entries.
std::vector<Int> reduce_vec(const CycParams& P, std::vector<Int> v) {
  long step = P.pn / P.p;  // p^(n-1)
  if (static_cast<long>(v.size()) < P.degree) v.resize(P.degree, Int(0));
  for (long d = static_cast<long>(v.size()) - 1; d >= P.degree; --d) {
    if (v[d] == 0) continue;
    Int c = v[d];
    v[d] = 0;
    long base = d - P.degree;
    for (long i = 0; i < P.p - 1; ++i) v[base + i * step] -= c;
  }
  v.resize(P.degree);
  return v;
}

}  // namespace

CycElt::CycElt(CycParams P, std::vector<Int> coeffs) : P_(P), c_(reduce_vec(P, std::move(coeffs))) {}

CycElt CycElt::zero(const CycParams& P) { return CycElt(P, {}); }

CycElt CycElt::one(const CycParams& P) { return CycElt(P, {Int(1)}); }

CycElt CycElt::from_int(const CycParams& P, Int v) { return CycElt(P, {std::move(v)}); }

CycElt CycElt::zeta_pow(const CycParams& P, long k) {
  k %= P.pn;
  if (k < 0) k += P.pn;
  std::vector<Int> v(static_cast<size_t>(k) + 1, Int(0));
  v[k] = 1;
  return CycElt(P, std::move(v));
}

bool CycElt::is_zero() const {
  for (const auto& c : c_) if (c != 0) return false;
  return true;
}

CycElt CycElt::operator+(const CycElt& o) const {
  if (P_ != o.P_) throw Error(Error::Kind::bad_input, "mixed cyclotomic levels");
  std::vector<Int> v(c_);
  for (long i = 0; i < P_.degree; ++i) v[i] += o.c_[i];
  return CycElt(P_, std::move(v));
}

CycElt CycElt::operator-(const CycElt& o) const {
  if (P_ != o.P_) throw Error(Error::Kind::bad_input, "mixed cyclotomic levels");
  std::vector<Int> v(c_);
  for (long i = 0; i < P_.degree; ++i) v[i] -= o.c_[i];
  return CycElt(P_, std::move(v));
}

CycElt CycElt::operator-() const {
  std::vector<Int> v(c_);
  for (auto& c : v) c = -c;
  return CycElt(P_, std::move(v));
}

CycElt CycElt::operator*(const CycElt& o) const {
  if (P_ != o.P_) throw Error(Error::Kind::bad_input, "mixed cyclotomic levels");
  std::vector<Int> v(2 * static_cast<size_t>(P_.degree), Int(0));
  for (long i = 0; i < P_.degree; ++i) {
    if (c_[i] == 0) continue;
    for (long j = 0; j < P_.degree; ++j) {
      if (o.c_[j] == 0) continue;
      mpz_addmul(v[i + j].get_mpz_t(), c_[i].get_mpz_t(), o.c_[j].get_mpz_t());
    }
  }
  return CycElt(P_, std::move(v));
}

bool CycElt::operator==(const CycElt& o) const { return P_ == o.P_ && c_ == o.c_; }

CycElt CycElt::pow(const Int& e) const {
  if (e < 0) throw Error(Error::Kind::bad_input, "CycElt::pow: negative exponent");
  CycElt r = one(P_);
  CycElt b = *this;
  Int k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

CycElt galois_apply(const GaloisElt& s, const CycElt& x) {
  const CycParams& P = x.params();
  if (s.pn != P.pn) throw Error(Error::Kind::bad_input, "Galois element at wrong level");
  std::vector<Int> v(P.pn, Int(0));
  for (long i = 0; i < P.degree; ++i) {
    if (x.coeffs()[i] == 0) continue;
    long e = static_cast<long>((static_cast<long long>(s.a) * i) % P.pn);
    v[e] += x.coeffs()[i];
  }
  return CycElt(P, std::move(v));
}

Int abs_norm(const CycElt& x) {
  const CycParams& P = x.params();
  CycElt prod = CycElt::one(P);
  for (const auto& s : galois_group(P)) prod = prod * galois_apply(s, x);
  for (long i = 1; i < P.degree; ++i)
    if (prod.coeffs()[i] != 0) throw Error(Error::Kind::internal, "norm did not land in Z");
  return prod.coeffs()[0];
}

std::optional<CycElt> try_div_exact(const CycElt& x, const CycElt& y) {
  if (x.params() != y.params()) throw Error(Error::Kind::bad_input, "mixed cyclotomic levels");
  if (y.is_zero()) throw Error(Error::Kind::divide_by_zero, "division by zero in Z[zeta]");
  const CycParams& P = x.params();
  // x/y = x * prod_{s != 1} s(y) / N(y); the power basis is a Z-basis, so
  // integrality is exactly coefficientwise divisibility by the norm.
  CycElt cof = CycElt::one(P);
  for (const auto& s : galois_group(P))
    if (s.a != 1) cof = cof * galois_apply(s, y);
  CycElt num = x * cof;
  CycElt ny = y * cof;
  for (long i = 1; i < P.degree; ++i)
    if (ny.coeffs()[i] != 0) throw Error(Error::Kind::internal, "norm did not land in Z");
  Int N = ny.coeffs()[0];
  std::vector<Int> q(P.degree);
  for (long i = 0; i < P.degree; ++i) {
    Int rem;
    mpz_fdiv_qr(q[i].get_mpz_t(), rem.get_mpz_t(), num.coeffs()[i].get_mpz_t(), N.get_mpz_t());
    if (rem != 0) return std::nullopt;
  }
  return CycElt(P, std::move(q));
}

CycElt div_exact(const CycElt& x, const CycElt& y) {
  auto q = try_div_exact(x, y);
  if (!q) throw Error(Error::Kind::bad_input, "div_exact: not divisible");
  return *q;
}

CycElt unit_inverse(const CycElt& u) {
  auto q = try_div_exact(CycElt::one(u.params()), u);
  if (!q) throw Error(Error::Kind::not_invertible, "unit_inverse: element is not a unit");
  return *q;
}

}  // namespace zetalift::cyc
