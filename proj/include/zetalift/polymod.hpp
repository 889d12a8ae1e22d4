#pragma once

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "zetalift/base.hpp"

// Univariate polynomial arithmetic with coefficients in Z/m, little-endian
// coefficient vectors, always normalized (no trailing zeros; empty vector = 0).
// gcd and ext_gcd require a prime modulus; everything else accepts any m >= 2.
namespace zetalift::poly {

using Poly = std::vector<Int>;

int degree(const Poly& f);
Poly normalize(Poly f, const Int& m);
bool is_zero(const Poly& f);
bool is_monic(const Poly& f);

Poly add(const Poly& a, const Poly& b, const Int& m);
Poly sub(const Poly& a, const Poly& b, const Int& m);
Poly mul(const Poly& a, const Poly& b, const Int& m);
Poly scalar_mul(const Int& c, const Poly& a, const Int& m);

// Division by a monic divisor; exact over Z/m for any m.
std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g, const Int& m);

Poly mulmod(const Poly& a, const Poly& b, const Poly& g, const Int& m);
Poly powmod(const Poly& a, const Int& e, const Poly& g, const Int& m);

Int eval(const Poly& f, const Int& x, const Int& m);

Poly make_monic(const Poly& f, const Int& q);
Poly gcd(Poly a, Poly b, const Int& q);
// Returns (g, s, t) with s*a + t*b = g, g monic.
std::tuple<Poly, Poly, Poly> ext_gcd(const Poly& a, const Poly& b, const Int& q);

// Phi_{p^n}(x) = sum_{i<p} x^{i * p^(n-1)}, over Z.
Poly cyclotomic_pp(long p, long n);

// Factors a squarefree product of degree-d irreducibles mod prime q.
// Handles q = 2 via the trace map; odd q via power-gcd splitting.
std::vector<Poly> equal_degree_factor(const Poly& f, int d, const Int& q, std::mt19937_64& rng);

// Quadratic Hensel lifting of a monic coprime factorization f = g*h mod q.
struct HenselPair {
  Poly g, h;  // monic, f = g*h mod modulus
  Poly s, t;  // s*g + t*h = 1 mod modulus, deg s < deg h, deg t < deg g
  Int modulus;
};

HenselPair hensel_init(const Poly& f, const Poly& g0, const Int& q);
void hensel_step(const Poly& f, HenselPair& hp);
// Lifts g0 | f mod q to the factor of f mod q^K reducing to g0.
Poly hensel_lift_factor(const Poly& f, const Poly& g0, const Int& q, long K);

}  // namespace zetalift::poly
