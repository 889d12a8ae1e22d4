#include "zetalift/polymod.hpp"

#include <algorithm>

namespace zetalift::poly {

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

bool is_zero(const Poly& f) { return f.empty(); }

Poly normalize(Poly f, const Int& m) {
  for (auto& c : f) c = mod_norm(c, m);
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

bool is_monic(const Poly& f) { return !f.empty() && f.back() == 1; }

Poly add(const Poly& a, const Poly& b, const Int& m) {
  Poly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return normalize(std::move(r), m);
}

Poly sub(const Poly& a, const Poly& b, const Int& m) {
  Poly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return normalize(std::move(r), m);
}

Poly mul(const Poly& a, const Poly& b, const Int& m) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return normalize(std::move(r), m);
}

Poly scalar_mul(const Int& c, const Poly& a, const Int& m) {
  Poly r(a);
  for (auto& x : r) x *= c;
  return normalize(std::move(r), m);
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g, const Int& m) {
  if (!is_monic(g)) throw Error(Error::Kind::bad_input, "divmod: divisor must be monic");
  Poly r = normalize(f, m);
  int dg = degree(g);
  if (degree(r) < dg) return {Poly{}, r};
  Poly q(r.size() - dg, Int(0));
  for (int i = degree(r); i >= dg; --i) {
    Int c = r[i];
    if (c == 0) continue;
    q[i - dg] = c;
    for (int j = 0; j <= dg; ++j) r[i - dg + j] = mod_norm(r[i - dg + j] - c * g[j], m);
  }
  return {normalize(std::move(q), m), normalize(std::move(r), m)};
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& g, const Int& m) {
  return divmod(mul(a, b, m), g, m).second;
}

Poly powmod(const Poly& a, const Int& e, const Poly& g, const Int& m) {
  if (e < 0) throw Error(Error::Kind::bad_input, "powmod: negative exponent");
  Poly base = divmod(a, g, m).second;
  Poly r{Int(1)};
  Int k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = mulmod(r, base, g, m);
    base = mulmod(base, base, g, m);
    k >>= 1;
  }
  return r;
}

Int eval(const Poly& f, const Int& x, const Int& m) {
  Int r = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) r = mod_norm(r * x + *it, m);
  return r;
}

Poly make_monic(const Poly& f, const Int& q) {
  if (f.empty()) return f;
  return scalar_mul(invmod(f.back(), q), f, q);
}

Poly gcd(Poly a, Poly b, const Int& q) {
  a = normalize(std::move(a), q);
  b = normalize(std::move(b), q);
  while (!b.empty()) {
    Poly r = divmod(a, make_monic(b, q), q).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : make_monic(a, q);
}

std::tuple<Poly, Poly, Poly> ext_gcd(const Poly& a, const Poly& b, const Int& q) {
  Poly r0 = normalize(a, q), r1 = normalize(b, q);
  Poly s0{Int(1)}, s1{}, t0{}, t1{Int(1)};
  while (!r1.empty()) {
    Int lc = r1.back();
    Poly r1m = make_monic(r1, q);
    auto [qq, rr] = divmod(r0, r1m, q);
    // divmod used the monic rescaling; fold the leading coefficient back in.
    qq = scalar_mul(invmod(lc, q), qq, q);
    Poly s2 = sub(s0, mul(qq, s1, q), q);
    Poly t2 = sub(t0, mul(qq, t1, q), q);
    r0 = std::move(r1); r1 = std::move(rr);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  if (r0.empty()) return {r0, s0, t0};
  Int inv = invmod(r0.back(), q);
  return {scalar_mul(inv, r0, q), scalar_mul(inv, s0, q), scalar_mul(inv, t0, q)};
}

Poly cyclotomic_pp(long p, long n) {
  check_odd_prime(p);
  if (n < 1) throw Error(Error::Kind::bad_input, "cyclotomic level n must be >= 1");
  long step = 1;
  for (long i = 1; i < n; ++i) step *= p;
  Poly f(static_cast<size_t>(step) * (p - 1) + 1, Int(0));
  for (long i = 0; i < p; ++i) f[static_cast<size_t>(i) * step] = 1;
  return f;
}

namespace {

Poly random_poly(int max_deg, const Int& q, std::mt19937_64& rng) {
  Poly r(static_cast<size_t>(max_deg) + 1);
  for (auto& c : r) {
    Int v = static_cast<unsigned long>(rng());
    c = mod_norm(v, q);
  }
  return normalize(std::move(r), q);
}

void edf_rec(const Poly& f, int d, const Int& q, std::mt19937_64& rng, std::vector<Poly>& out) {
  int df = degree(f);
  if (df == d) {
    out.push_back(f);
    return;
  }
  Int qd;
  mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
  while (true) {
    Poly a = random_poly(df - 1, q, rng);
    if (degree(a) < 1) continue;
    Poly b;
    if (q == 2) {
      // Trace map sum a^(2^i), i < d, splits within each factor's residue field.
      Poly acc = divmod(a, f, q).second;
      b = acc;
      for (int i = 1; i < d; ++i) {
        acc = mulmod(acc, acc, f, q);
        b = add(b, acc, q);
      }
    } else {
      Int e = (qd - 1) / 2;
      b = sub(powmod(a, e, f, q), Poly{Int(1)}, q);
    }
    Poly g = gcd(b, f, q);
    int dg = degree(g);
    if (dg <= 0 || dg >= df) continue;
    edf_rec(g, d, q, rng, out);
    edf_rec(divmod(f, g, q).first, d, q, rng, out);
    return;
  }
}

}  // namespace

std::vector<Poly> equal_degree_factor(const Poly& f, int d, const Int& q, std::mt19937_64& rng) {
  Poly fm = normalize(f, q);
  if (!is_monic(fm)) fm = make_monic(fm, q);
  if (degree(fm) % d != 0)
    throw Error(Error::Kind::bad_input, "equal_degree_factor: degree mismatch");
  std::vector<Poly> out;
  edf_rec(fm, d, q, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

HenselPair hensel_init(const Poly& f, const Poly& g0, const Int& q) {
  Poly fq = normalize(f, q);
  Poly g = normalize(g0, q);
  if (!is_monic(g)) throw Error(Error::Kind::bad_input, "hensel_init: factor must be monic");
  auto [h, r] = divmod(fq, g, q);
  if (!r.empty()) throw Error(Error::Kind::bad_input, "hensel_init: g0 does not divide f mod q");
  auto [d, s, t] = ext_gcd(g, h, q);
  if (degree(d) != 0)
    throw Error(Error::Kind::bad_input, "hensel_init: factors are not coprime mod q");
  // Normalize the Bezout pair to the degree bounds the lifting step preserves.
  auto [qs, rs] = divmod(s, h, q);
  s = rs;
  t = add(t, mul(qs, g, q), q);
  return {g, h, s, t, q};
}

void hensel_step(const Poly& f, HenselPair& hp) {
  Int m2 = hp.modulus * hp.modulus;
  const Poly fm = normalize(f, m2);
  Poly e = sub(fm, mul(hp.g, hp.h, m2), m2);
  Poly dg = divmod(mul(hp.t, e, m2), hp.g, m2).second;
  auto [dh, rem] = divmod(sub(e, mul(hp.h, dg, m2), m2), hp.g, m2);
  if (!rem.empty()) throw Error(Error::Kind::internal, "hensel_step: inexact quotient");
  Poly g2 = add(hp.g, dg, m2);
  Poly h2 = add(hp.h, dh, m2);

  Poly b = sub(add(mul(hp.s, g2, m2), mul(hp.t, h2, m2), m2), Poly{Int(1)}, m2);
  Poly ds = divmod(mul(hp.s, b, m2), h2, m2).second;
  ds = sub(Poly{}, ds, m2);
  auto [dt, rem2] = divmod(sub(Poly{}, add(b, mul(g2, ds, m2), m2), m2), h2, m2);
  if (!rem2.empty()) throw Error(Error::Kind::internal, "hensel_step: inexact Bezout quotient");
  hp.g = std::move(g2);
  hp.h = std::move(h2);
  hp.s = add(hp.s, ds, m2);
  hp.t = add(hp.t, dt, m2);
  hp.modulus = m2;
}

Poly hensel_lift_factor(const Poly& f, const Poly& g0, const Int& q, long K) {
  if (K < 1) throw Error(Error::Kind::bad_input, "hensel_lift_factor: K must be >= 1");
  Int target;
  mpz_pow_ui(target.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(K));
  HenselPair hp = hensel_init(f, g0, q);
  while (hp.modulus < target) hensel_step(f, hp);
  return normalize(hp.g, target);
}

}  // namespace zetalift::poly
