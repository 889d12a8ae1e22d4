#include "zetalift/valuations.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace zetalift::vals {

using cyc::CycElt;
using cyc::CycParams;
using cyc::GaloisElt;
using poly::Poly;

std::string PrimeAbove::label() const {
  if (ramified) return "pi";
  std::ostringstream os;
  os << "q=" << q.get_str() << ",g=[";
  for (size_t i = 0; i < g.size(); ++i) {
    if (i) os << ",";
    os << g[i].get_str();
  }
  os << "]";
  return os.str();
}

std::vector<PrimeAbove> primes_above(const CycParams& P, const Int& q, std::uint64_t seed) {
  if (!is_prime(q)) throw Error(Error::Kind::bad_input, "primes_above: q must be prime");
  if (q == P.p) {
    PrimeAbove r;
    r.P = P;
    r.q = q;
    r.g = Poly{Int(-1 + q), Int(1)};  // x - 1: zeta = 1 in the residue field
    r.f = 1;
    r.ramified = true;
    return {r};
  }
  // residue degree = multiplicative order of q mod p^n
  long f = 1;
  Int acc = mod_norm(q, Int(P.pn));
  while (acc != 1) {
    acc = mod_norm(acc * q, Int(P.pn));
    ++f;
  }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(q.get_ui()));
  auto fs = poly::equal_degree_factor(poly::cyclotomic_pp(P.p, P.n),
                                      static_cast<int>(f), q, rng);
  std::vector<PrimeAbove> out;
  for (auto& g : fs) {
    PrimeAbove r;
    r.P = P;
    r.q = q;
    r.g = std::move(g);
    r.f = f;
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(),
            [](const PrimeAbove& a, const PrimeAbove& b) { return a.g < b.g; });
  return out;
}

long val_at(const CycElt& x, const PrimeAbove& Pa, const ValOptions& opt) {
  if (x.params() != Pa.P) throw Error(Error::Kind::bad_input, "val_at: wrong cyclotomic level");
  if (x.is_zero()) throw Error(Error::Kind::bad_input, "val_at: valuation of zero");
  if (Pa.ramified) return pi_val(x);
  Poly phi = poly::cyclotomic_pp(Pa.P.p, Pa.P.n);
  Poly xv(x.coeffs());
  for (long K = 2;; K *= 2) {
    if (K > opt.precision_ceiling)
      throw Error(Error::Kind::precision_ceiling,
                  "val_at: exceeded precision ceiling q^" + std::to_string(opt.precision_ceiling));
    Int qK;
    mpz_pow_ui(qK.get_mpz_t(), Pa.q.get_mpz_t(), static_cast<unsigned long>(K));
    Poly gt = poly::hensel_lift_factor(phi, Pa.g, Pa.q, K);
    Poly r = poly::divmod(poly::normalize(xv, qK), gt, qK).second;
    if (poly::is_zero(r)) continue;  // v >= K: raise precision
    long v = K;
    for (const auto& c : r) {
      if (c == 0) continue;
      Int t = c;
      long vc = 0;
      while (t % Pa.q == 0) {
        t /= Pa.q;
        ++vc;
      }
      v = std::min(v, vc);
    }
    return v;
  }
}

long pi_val(const CycElt& x) {
  if (x.is_zero()) throw Error(Error::Kind::bad_input, "pi_val: valuation of zero");
  const CycParams& P = x.params();
  // Precompute the cofactor of (1 - zeta): product of its other conjugates.
  CycElt pi = CycElt::one(P) - CycElt::zeta_pow(P, 1);
  CycElt cof = CycElt::one(P);
  for (const auto& s : cyc::galois_group(P))
    if (s.a != 1) cof = cof * galois_apply(s, pi);
  Int N = abs_norm(pi);  // = p
  CycElt cur = x;
  long v = 0;
  while (true) {
    CycElt num = cur * cof;
    std::vector<Int> qc(P.degree);
    bool divisible = true;
    for (long i = 0; i < P.degree; ++i) {
      Int rem;
      mpz_fdiv_qr(qc[i].get_mpz_t(), rem.get_mpz_t(), num.coeffs()[i].get_mpz_t(),
                  N.get_mpz_t());
      if (rem != 0) { divisible = false; break; }
    }
    if (!divisible) return v;
    cur = CycElt(P, std::move(qc));
    ++v;
  }
}

std::optional<size_t> TildeT::index_of(const PrimeAbove& Pa) const {
  for (size_t i = 0; i < primes.size(); ++i)
    if (primes[i] == Pa) return i;
  return std::nullopt;
}

TildeT primes_above_set(const CycParams& P, std::vector<Int> T, std::uint64_t seed) {
  std::sort(T.begin(), T.end());
  T.erase(std::unique(T.begin(), T.end()), T.end());
  TildeT tt;
  tt.P = P;
  tt.T = T;
  bool hasp = std::find(T.begin(), T.end(), Int(P.p)) != T.end();
  if (hasp) {
    auto r = primes_above(P, Int(P.p), seed);
    tt.primes.push_back(r[0]);
  }
  for (const auto& q : T) {
    if (q == P.p) continue;
    auto r = primes_above(P, q, seed);
    tt.primes.insert(tt.primes.end(), r.begin(), r.end());
  }
  return tt;
}

std::vector<long> val_vector(const CycElt& x, const TildeT& tt, const ValOptions& opt) {
  std::vector<long> out;
  out.reserve(tt.primes.size());
  for (const auto& Pa : tt.primes) {
    long v = Pa.ramified ? pi_val(x) : val_at(x, Pa, opt);
    out.push_back(((v % tt.P.pn) + tt.P.pn) % tt.P.pn);
  }
  return out;
}

namespace {

// Evaluates f at the residue class h modulo (g, q).
Poly compose_mod(const Poly& f, const Poly& h, const Poly& g, const Int& q) {
  Poly acc;
  for (auto it = f.rbegin(); it != f.rend(); ++it)
    acc = poly::add(poly::mulmod(acc, h, g, q), Poly{*it}, q);
  return acc;
}

}  // namespace

PrimeAbove galois_on_prime(const GaloisElt& alpha, const PrimeAbove& Pa) {
  if (alpha.pn != Pa.P.pn)
    throw Error(Error::Kind::bad_input, "galois_on_prime: wrong level");
  if (Pa.ramified) return Pa;
  // zeta -> zeta^alpha sends the place with residue root t to the one whose
  // root is t^(alpha^(-1)).
  long ai = alpha.inverse().a;
  Poly h = poly::powmod(Poly{Int(0), Int(1)}, Int(ai), Pa.g, Pa.q);
  for (auto& cand : primes_above(Pa.P, Pa.q)) {
    if (poly::is_zero(compose_mod(cand.g, h, Pa.g, Pa.q))) return cand;
  }
  throw Error(Error::Kind::internal, "galois_on_prime: image not found");
}

std::vector<long> star_act(const GaloisElt& alpha, const std::vector<long>& b,
                           const TildeT& tt) {
  if (b.size() != tt.primes.size())
    throw Error(Error::Kind::bad_input, "star_act: vector length mismatch");
  long ai = alpha.inverse().a;
  std::vector<long> out(b.size());
  for (size_t i = 0; i < tt.primes.size(); ++i) {
    auto j = tt.index_of(galois_on_prime(alpha, tt.primes[i]));
    if (!j) throw Error(Error::Kind::bad_input, "star_act: set of places is not Galois-stable");
    out[i] = static_cast<long>((static_cast<long long>(ai) * b[*j]) % tt.P.pn);
  }
  return out;
}

namespace {

void factor_rec(Int n, const FactorOptions& opt, std::vector<Int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  if (n > opt.composite_limit)
    throw Error(Error::Kind::factoring_failure,
                "factor: composite cofactor exceeds the supported bound");
  // Pollard rho, Brent variant, deterministic sequence of constants.
  for (Int c = 1;; c += 1) {
    if (c > 40)
      throw Error(Error::Kind::factoring_failure, "factor: rho failed to split cofactor");
    Int x = 2, y = 2, d = 1;
    long iter = 0;
    while (d == 1) {
      if (++iter > 2000000)
        throw Error(Error::Kind::factoring_failure, "factor: rho iteration budget exhausted");
      x = mod_norm(x * x + c, n);
      y = mod_norm(y * y + c, n);
      y = mod_norm(y * y + c, n);
      Int diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) {
      factor_rec(d, opt, out);
      factor_rec(n / d, opt, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<Int, long>> factor_positive(const Int& N, const FactorOptions& opt) {
  if (N <= 0) throw Error(Error::Kind::bad_input, "factor_positive: N must be positive");
  Int n = N;
  std::vector<Int> primes;
  for (long d = 2; d <= opt.trial_bound && Int(d) * d <= n; d = (d == 2 ? 3 : d + 2)) {
    while (n % d == 0) {
      primes.push_back(Int(d));
      n /= d;
    }
  }
  factor_rec(n, opt, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Int, long>> out;
  for (const auto& q : primes) {
    if (!out.empty() && out.back().first == q)
      out.back().second++;
    else
      out.emplace_back(q, 1);
  }
  return out;
}

bool is_in_E(const CycElt& x, const std::vector<Int>& T, const FactorOptions& fopt,
             const ValOptions& vopt) {
  if (x.is_zero()) throw Error(Error::Kind::bad_input, "is_in_E: zero element");
  const CycParams& P = x.params();
  auto inT = [&](const Int& q) { return std::find(T.begin(), T.end(), q) != T.end(); };
  Int N = abs_norm(x);
  if (N < 0) N = -N;
  for (const auto& [q, e] : factor_positive(N, fopt)) {
    if (inT(q)) continue;
    if (q == P.p) {
      if (pi_val(x) % P.pn != 0) return false;
      continue;
    }
    for (const auto& Pa : primes_above(P, q))
      if (val_at(x, Pa, vopt) % P.pn != 0) return false;
  }
  return true;
}

std::optional<GeneratorResult> prime_generator_search(const PrimeAbove& Pa, long box,
                                                      const ValOptions& opt) {
  const CycParams& P = Pa.P;
  if (Pa.ramified)
    return GeneratorResult{CycElt::one(P) - CycElt::zeta_pow(P, 1), 1};
  if (Pa.f == P.degree)
    return GeneratorResult{CycElt::from_int(P, Pa.q), 1};
  if (box < 1) throw Error(Error::Kind::bad_input, "prime_generator_search: empty box");

  // Odometer over coefficient vectors in [-box, box]^degree, canonical order.
  std::vector<long> c(P.degree, -box);
  while (true) {
    bool allzero = std::all_of(c.begin(), c.end(), [](long v) { return v == 0; });
    if (!allzero) {
      std::vector<Int> coeffs(c.begin(), c.end());
      CycElt u(P, coeffs);
      Int N = abs_norm(u);
      if (N < 0) N = -N;
      if (N > 1) {
        // Need N = q^(f*h) with h coprime to p.
        long e = 0;
        Int t = N;
        while (t % Pa.q == 0) {
          t /= Pa.q;
          ++e;
        }
        if (t == 1 && e % Pa.f == 0) {
          long h = e / Pa.f;
          if (h % P.p != 0 && val_at(u, Pa, opt) == h) return GeneratorResult{u, h};
        }
      }
    }
    size_t i = 0;
    while (i < c.size() && c[i] == box) c[i++] = -box;
    if (i == c.size()) return std::nullopt;
    ++c[i];
  }
}

}  // namespace zetalift::vals
