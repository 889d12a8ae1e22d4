#include "zetalift/gcohom.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace zetalift::cohom {

namespace {

long long norm_mod(long long v, long long pm) { return ((v % pm) + pm) % pm; }

// Subgroup generated by S: left-multiplication closure from the identity
// (inverses come for free in a finite group).
std::vector<char> closure_of(const FiniteGroup& G, const std::vector<long>& S) {
  std::vector<char> in(static_cast<size_t>(G.size()), 0);
  std::queue<long> q;
  in[0] = 1;
  q.push(0);
  while (!q.empty()) {
    long x = q.front();
    q.pop();
    for (long s : S) {
      long y = G.mul(s, x);
      if (!in[static_cast<size_t>(y)]) {
        in[static_cast<size_t>(y)] = 1;
        q.push(y);
      }
    }
  }
  return in;
}

bool closure_is_full(const FiniteGroup& G, const std::vector<long>& S) {
  auto in = closure_of(G, S);
  return std::find(in.begin(), in.end(), 0) == in.end();
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteGroup

void FiniteGroup::finalize() {
  long n = n_;
  if (n <= 0) throw Error(Error::Kind::bad_input, "group: empty multiplication table");
  if (n > 600)
    throw Error(Error::Kind::size_ceiling,
                "group of order " + std::to_string(n) + " exceeds the exhaustive-check bound");
  for (long x = 0; x < n; ++x)
    if (mul(0, x) != x || mul(x, 0) != x)
      throw Error(Error::Kind::bad_input, "group: element 0 is not an identity");
  std::vector<char> seen(static_cast<size_t>(n));
  for (long a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (long b = 0; b < n; ++b) {
      long v = mul(a, b);
      if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
        throw Error(Error::Kind::bad_input, "group: row " + std::to_string(a) + " is not a permutation");
      seen[static_cast<size_t>(v)] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (long b = 0; b < n; ++b) {
      long v = mul(b, a);
      if (seen[static_cast<size_t>(v)])
        throw Error(Error::Kind::bad_input, "group: column " + std::to_string(a) + " is not a permutation");
      seen[static_cast<size_t>(v)] = 1;
    }
  }
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      for (long c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw Error(Error::Kind::bad_input, "group: multiplication is not associative");
  inv_.assign(static_cast<size_t>(n), -1);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      if (mul(a, b) == 0) {
        inv_[static_cast<size_t>(a)] = b;
        break;
      }
  if (labels_.empty()) {
    labels_.reserve(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
  }
  if (static_cast<long>(labels_.size()) != n)
    throw Error(Error::Kind::bad_input, "group: label count mismatch");
  if (chi_modulus_ != 0) {
    if (static_cast<long>(chi_.size()) != n)
      throw Error(Error::Kind::bad_input, "group: chi value count mismatch");
    for (auto& v : chi_) v = norm_mod(v, chi_modulus_);
    if (chi_[0] != 1 % chi_modulus_)
      throw Error(Error::Kind::bad_input, "group: chi(identity) != 1");
    for (long a = 0; a < n; ++a) {
      if (std::gcd(chi_[static_cast<size_t>(a)], chi_modulus_) != 1)
        throw Error(Error::Kind::bad_input, "group: chi value is not a unit");
      for (long b = 0; b < n; ++b)
        if (chi_[static_cast<size_t>(mul(a, b))] !=
            chi_[static_cast<size_t>(a)] * chi_[static_cast<size_t>(b)] % chi_modulus_)
          throw Error(Error::Kind::bad_input, "group: chi is not multiplicative");
    }
  }
  gens_.clear();
  for (long g = 1; g < n && !closure_is_full(*this, gens_); ++g) {
    auto in = closure_of(*this, gens_);
    if (!in[static_cast<size_t>(g)]) gens_.push_back(g);
  }
  for (size_t i = gens_.size(); i-- > 0;) {
    std::vector<long> trimmed = gens_;
    trimmed.erase(trimmed.begin() + static_cast<long>(i));
    if (closure_is_full(*this, trimmed)) gens_ = trimmed;
  }
  if (n > 1 && !closure_is_full(*this, gens_))
    throw Error(Error::Kind::internal, "group: generator search failed");
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<long>> table,
                                    std::vector<std::string> labels,
                                    std::vector<long long> chi, long long chi_modulus) {
  FiniteGroup G;
  G.n_ = static_cast<long>(table.size());
  G.table_.reserve(static_cast<size_t>(G.n_) * G.n_);
  for (auto& row : table) {
    if (static_cast<long>(row.size()) != G.n_)
      throw Error(Error::Kind::bad_input, "group: table is not square");
    G.table_.insert(G.table_.end(), row.begin(), row.end());
  }
  G.labels_ = std::move(labels);
  G.chi_ = std::move(chi);
  G.chi_modulus_ = chi_modulus;
  G.finalize();
  return G;
}

FiniteGroup FiniteGroup::cyclic(long k) {
  if (k < 1) throw Error(Error::Kind::bad_input, "cyclic: order must be >= 1");
  FiniteGroup G;
  G.n_ = k;
  G.table_.resize(static_cast<size_t>(k) * k);
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < k; ++j) G.table_[static_cast<size_t>(i) * k + j] = (i + j) % k;
  G.finalize();
  return G;
}

FiniteGroup FiniteGroup::units_mod(long p, long n) {
  check_odd_prime(p);
  if (n < 1) throw Error(Error::Kind::bad_input, "units_mod: n must be >= 1");
  long long pn = la::pow_ll(p, n);
  if (pn - pn / p > 600)
    throw Error(Error::Kind::size_ceiling, "units_mod: group too large");
  std::vector<long long> res;
  for (long long r = 1; r < pn; ++r)
    if (r % p != 0) res.push_back(r);
  std::vector<long> idx(static_cast<size_t>(pn), -1);
  for (size_t i = 0; i < res.size(); ++i) idx[static_cast<size_t>(res[i])] = static_cast<long>(i);
  FiniteGroup G;
  G.n_ = static_cast<long>(res.size());
  G.table_.resize(static_cast<size_t>(G.n_) * G.n_);
  for (long i = 0; i < G.n_; ++i)
    for (long j = 0; j < G.n_; ++j)
      G.table_[static_cast<size_t>(i) * G.n_ + j] =
          idx[static_cast<size_t>(res[static_cast<size_t>(i)] * res[static_cast<size_t>(j)] % pn)];
  for (auto r : res) G.labels_.push_back(std::to_string(r));
  G.chi_ = res;
  G.chi_modulus_ = pn;
  G.finalize();
  return G;
}

FiniteGroup FiniteGroup::one_plus_p(long p, long n) {
  check_odd_prime(p);
  if (n < 1) throw Error(Error::Kind::bad_input, "one_plus_p: n must be >= 1");
  long long pn = la::pow_ll(p, n);
  long k = static_cast<long>(la::pow_ll(p, n - 1));
  if (k > 600) throw Error(Error::Kind::size_ceiling, "one_plus_p: group too large");
  FiniteGroup G;
  G.n_ = k;
  G.table_.resize(static_cast<size_t>(k) * k);
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < k; ++j) G.table_[static_cast<size_t>(i) * k + j] = (i + j) % k;
  long long r = 1;
  for (long i = 0; i < k; ++i) {
    G.labels_.push_back(std::to_string(r));
    G.chi_.push_back(r);
    r = r * (1 + p) % pn;
  }
  if (r != 1)
    throw Error(Error::Kind::internal, "one_plus_p: 1+p does not have order p^(n-1)");
  G.chi_modulus_ = pn;
  G.finalize();
  return G;
}

FiniteGroup FiniteGroup::kummer_semidirect(long p, long m) {
  check_odd_prime(p);
  if (m < 1) throw Error(Error::Kind::bad_input, "kummer_semidirect: m must be >= 1");
  long long pm = la::pow_ll(p, m);
  std::vector<long long> units;
  for (long long a = 1; a < pm; ++a)
    if (a % p != 0) units.push_back(a);
  std::vector<long> apos(static_cast<size_t>(pm), -1);
  for (size_t i = 0; i < units.size(); ++i) apos[static_cast<size_t>(units[i])] = static_cast<long>(i);
  long long nn_ll = pm * pm * static_cast<long long>(units.size());
  if (nn_ll > 600) throw Error(Error::Kind::size_ceiling, "kummer_semidirect: group too large");
  long nn = static_cast<long>(nn_ll);
  auto enc = [&](long long b1, long long b2, long long a) {
    return static_cast<long>((apos[static_cast<size_t>(a)] * pm + b1) * pm + b2);
  };
  FiniteGroup G;
  G.n_ = nn;
  G.table_.resize(static_cast<size_t>(nn) * nn);
  G.labels_.resize(static_cast<size_t>(nn));
  G.chi_.resize(static_cast<size_t>(nn));
  for (size_t ia = 0; ia < units.size(); ++ia)
    for (long long b1 = 0; b1 < pm; ++b1)
      for (long long b2 = 0; b2 < pm; ++b2) {
        long e = enc(b1, b2, units[ia]);
        G.labels_[static_cast<size_t>(e)] = "(" + std::to_string(b1) + "," + std::to_string(b2) +
                                            "|" + std::to_string(units[ia]) + ")";
        G.chi_[static_cast<size_t>(e)] = units[ia];
      }
  for (size_t ia = 0; ia < units.size(); ++ia)
    for (long long b1 = 0; b1 < pm; ++b1)
      for (long long b2 = 0; b2 < pm; ++b2) {
        long x = enc(b1, b2, units[ia]);
        for (size_t ja = 0; ja < units.size(); ++ja)
          for (long long c1 = 0; c1 < pm; ++c1)
            for (long long c2 = 0; c2 < pm; ++c2) {
              long y = enc(c1, c2, units[ja]);
              long long a = units[ia];
              G.table_[static_cast<size_t>(x) * nn + y] =
                  enc((b1 + a * c1) % pm, (b2 + a * c2) % pm, a * units[ja] % pm);
            }
      }
  G.chi_modulus_ = pm;
  G.finalize();
  return G;
}

FiniteGroup FiniteGroup::translation_square(long p, long m) {
  check_odd_prime(p);
  if (m < 1) throw Error(Error::Kind::bad_input, "translation_square: m must be >= 1");
  long long pm = la::pow_ll(p, m);
  long nn = static_cast<long>(pm * pm);
  FiniteGroup G;
  G.n_ = nn;
  G.table_.resize(static_cast<size_t>(nn) * nn);
  for (long long b1 = 0; b1 < pm; ++b1)
    for (long long b2 = 0; b2 < pm; ++b2) {
      long x = static_cast<long>(b1 * pm + b2);
      G.labels_.push_back("(" + std::to_string(b1) + "," + std::to_string(b2) + ")");
      G.chi_.push_back(1);
      for (long long c1 = 0; c1 < pm; ++c1)
        for (long long c2 = 0; c2 < pm; ++c2)
          G.table_[static_cast<size_t>(x) * nn + static_cast<long>(c1 * pm + c2)] =
              static_cast<long>((b1 + c1) % pm * pm + (b2 + c2) % pm);
    }
  G.chi_modulus_ = pm;
  G.finalize();
  return G;
}

long FiniteGroup::order_of(long g) const {
  long k = 1, x = g;
  while (x != 0) {
    x = mul(g, x);
    ++k;
  }
  return k;
}

std::optional<long> FiniteGroup::cyclic_generator() const {
  for (long g = 0; g < n_; ++g)
    if (order_of(g) == n_) return g;
  return std::nullopt;
}

long long FiniteGroup::chi(long g) const {
  if (!has_chi()) throw Error(Error::Kind::bad_input, "group has no character");
  return chi_[static_cast<size_t>(g)];
}

// ---------------------------------------------------------------------------
// GModule

GModule GModule::from_generator_actions(std::shared_ptr<const FiniteGroup> G, long p, long m,
                                        long rank, la::MatI relations,
                                        const std::vector<std::pair<long, la::MatI>>& gen_acts) {
  if (!G) throw Error(Error::Kind::bad_input, "module: null group");
  if (rank < 0) throw Error(Error::Kind::bad_input, "module: negative rank");
  GModule M;
  M.G_ = std::move(G);
  M.p_ = p;
  M.m_ = m;
  M.pm_ = la::pow_ll(p, m);
  M.rank_ = rank;
  if (relations.rows == 0 && relations.cols == 0) relations = la::MatI(rank, 0);
  if (relations.rows != rank)
    throw Error(Error::Kind::bad_input, "module: relation matrix row count != rank");
  M.relations_ = la::mat_mod(relations, M.pm_);
  long N = M.G_->size();
  M.acts_.assign(static_cast<size_t>(N), la::MatI());
  std::vector<char> known(static_cast<size_t>(N), 0);
  M.acts_[0] = la::MatI::identity(rank);
  known[0] = 1;
  std::queue<long> q;
  q.push(0);
  while (!q.empty()) {
    long x = q.front();
    q.pop();
    for (auto& [s, As] : gen_acts) {
      if (As.rows != rank || As.cols != rank)
        throw Error(Error::Kind::bad_input, "module: action matrix shape mismatch");
      long y = M.G_->mul(s, x);
      if (!known[static_cast<size_t>(y)]) {
        M.acts_[static_cast<size_t>(y)] = la::matmul_mod(As, M.acts_[static_cast<size_t>(x)], M.pm_);
        known[static_cast<size_t>(y)] = 1;
        q.push(y);
      }
    }
  }
  for (long x = 0; x < N; ++x)
    if (!known[static_cast<size_t>(x)])
      throw Error(Error::Kind::bad_input, "module: supplied elements do not generate the group");
  for (auto& [s, As] : gen_acts)
    if (!(M.acts_[static_cast<size_t>(s)] == la::mat_mod(As, M.pm_)))
      throw Error(Error::Kind::bad_input, "module: inconsistent action for a supplied element");
  M.verify();
  return M;
}

GModule GModule::trivial(std::shared_ptr<const FiniteGroup> G, long p, long m, long rank) {
  std::vector<std::pair<long, la::MatI>> acts;
  for (long s : G->gens()) acts.emplace_back(s, la::MatI::identity(rank));
  return from_generator_actions(std::move(G), p, m, rank, la::MatI(), acts);
}

GModule GModule::tate_twist(std::shared_ptr<const FiniteGroup> G, long p, long m, long weight) {
  if (!G) throw Error(Error::Kind::bad_input, "module: null group");
  if (!G->has_chi()) throw Error(Error::Kind::bad_input, "tate_twist: group has no character");
  if (weight < 0) throw Error(Error::Kind::bad_input, "tate_twist: negative weight");
  long long pm = la::pow_ll(p, m);
  if (G->chi_modulus() % pm != 0)
    throw Error(Error::Kind::bad_input, "tate_twist: character modulus incompatible with p^m");
  std::vector<std::pair<long, la::MatI>> acts;
  for (long s : G->gens()) {
    la::MatI A(1, 1);
    A(0, 0) = to_long(modpow(Int(static_cast<long>(G->chi(s) % pm)), Int(weight), Int(static_cast<long>(pm))));
    acts.emplace_back(s, A);
  }
  GModule M = from_generator_actions(std::move(G), p, m, 1, la::MatI(), acts);
  M.weight_ = weight;
  return M;
}

GModule GModule::cyclic_from_action(std::shared_ptr<const FiniteGroup> G, long p, long m,
                                    la::MatI gen_action, la::MatI relations) {
  if (!G) throw Error(Error::Kind::bad_input, "module: null group");
  auto gen = G->cyclic_generator();
  if (!gen) throw Error(Error::Kind::not_cyclic, "cyclic_from_action: group is not cyclic");
  std::vector<std::pair<long, la::MatI>> acts{{*gen, std::move(gen_action)}};
  return from_generator_actions(std::move(G), p, m, acts[0].second.rows, std::move(relations),
                                acts);
}

void GModule::verify() const {
  long N = G_->size();
  for (long a = 0; a < N; ++a)
    for (long b = 0; b < N; ++b)
      if (!(la::matmul_mod(acts_[static_cast<size_t>(a)], acts_[static_cast<size_t>(b)], pm_) ==
            acts_[static_cast<size_t>(G_->mul(a, b))]))
        throw Error(Error::Kind::bad_input, "module: action is not a homomorphism");
  if (relations_.cols > 0)
    for (long s : G_->gens())
      if (!la::solve_mod_many(relations_, la::matmul_mod(acts_[static_cast<size_t>(s)], relations_, pm_),
                              p_, m_))
        throw Error(Error::Kind::bad_input, "module: action does not preserve the relation span");
}

Int GModule::size() const { return la::cokernel_mod(relations_, p_, m_).order(); }

// ---------------------------------------------------------------------------
// Cochain

Cochain::Cochain(std::shared_ptr<const GModule> M, int degree) : M_(std::move(M)), deg_(degree) {
  if (!M_) throw Error(Error::Kind::bad_input, "cochain: null module");
  if (degree < 0 || degree > 3) throw Error(Error::Kind::bad_input, "cochain: degree out of range");
  long N = M_->group().size();
  size_t len = static_cast<size_t>(M_->rank());
  for (int i = 0; i < degree; ++i) {
    if (len > 50'000'000 / static_cast<size_t>(N))
      throw Error(Error::Kind::size_ceiling, "cochain table too large");
    len *= static_cast<size_t>(N);
  }
  v_.assign(len, 0);
}

size_t Cochain::flat_index(const std::vector<long>& args) const {
  if (static_cast<int>(args.size()) != deg_)
    throw Error(Error::Kind::bad_input, "cochain: wrong argument count");
  long N = M_->group().size();
  size_t idx = 0;
  for (long a : args) {
    if (a < 0 || a >= N) throw Error(Error::Kind::bad_input, "cochain: argument out of range");
    idx = idx * static_cast<size_t>(N) + static_cast<size_t>(a);
  }
  return idx * static_cast<size_t>(M_->rank());
}

la::VecI Cochain::get(const std::vector<long>& args) const {
  size_t base = flat_index(args);
  return la::VecI(v_.begin() + static_cast<long>(base),
                  v_.begin() + static_cast<long>(base + static_cast<size_t>(M_->rank())));
}

void Cochain::set(const std::vector<long>& args, const la::VecI& v) {
  if (static_cast<long>(v.size()) != M_->rank())
    throw Error(Error::Kind::bad_input, "cochain: value rank mismatch");
  size_t base = flat_index(args);
  for (size_t i = 0; i < v.size(); ++i) v_[base + i] = norm_mod(v[i], M_->pm());
}

long long Cochain::at1(long s) const {
  if (M_->rank() != 1 || deg_ != 1) throw Error(Error::Kind::bad_input, "cochain: at1 shape");
  return v_[static_cast<size_t>(s)];
}

long long Cochain::at2(long s, long t) const {
  if (M_->rank() != 1 || deg_ != 2) throw Error(Error::Kind::bad_input, "cochain: at2 shape");
  return v_[static_cast<size_t>(s) * static_cast<size_t>(M_->group().size()) + static_cast<size_t>(t)];
}

void Cochain::set1(long s, long long v) { set({s}, {v}); }
void Cochain::set2(long s, long t, long long v) { set({s, t}, {v}); }

bool Cochain::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](long long x) { return x == 0; });
}

bool Cochain::normalized() const {
  long N = M_->group().size();
  long g = M_->rank();
  if (deg_ == 0) return true;
  // walk all tuples; zero required when any coordinate is the identity
  size_t tuples = v_.size() / static_cast<size_t>(g);
  for (size_t t = 0; t < tuples; ++t) {
    size_t rem = t;
    bool has_id = false;
    for (int i = 0; i < deg_; ++i) {
      if (rem % static_cast<size_t>(N) == 0) has_id = true;
      rem /= static_cast<size_t>(N);
    }
    if (!has_id) continue;
    for (long i = 0; i < g; ++i)
      if (v_[t * static_cast<size_t>(g) + static_cast<size_t>(i)] != 0) return false;
  }
  return true;
}

namespace {
void check_compatible(const Cochain& a, const Cochain& b) {
  const GModule &A = a.module(), &B = b.module();
  if (a.degree() != b.degree() || A.group_ptr() != B.group_ptr() || A.p() != B.p() ||
      A.m() != B.m() || A.rank() != B.rank() || !(A.relations() == B.relations()))
    throw Error(Error::Kind::bad_input, "cochain: incompatible operands");
}
}  // namespace

Cochain Cochain::operator+(const Cochain& o) const {
  check_compatible(*this, o);
  Cochain r = *this;
  for (size_t i = 0; i < v_.size(); ++i) r.v_[i] = (v_[i] + o.v_[i]) % M_->pm();
  return r;
}

Cochain Cochain::operator-() const {
  Cochain r = *this;
  for (auto& x : r.v_) x = norm_mod(-x, M_->pm());
  return r;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + (-o); }

Cochain Cochain::scaled(long long c) const {
  Cochain r = *this;
  c = norm_mod(c, M_->pm());
  for (auto& x : r.v_) x = x * c % M_->pm();
  return r;
}

// ---------------------------------------------------------------------------
// Differential, cocycle test, cup product

Cochain coboundary(const Cochain& f) {
  const GModule& M = f.module();
  const FiniteGroup& G = M.group();
  long N = G.size();
  long long pm = M.pm();
  Cochain out(f.module_ptr(), f.degree() + 1);
  switch (f.degree()) {
    case 0: {
      la::VecI b = f.get({});
      for (long s = 0; s < N; ++s) {
        la::VecI sb = la::matvec_mod(M.action(s), b, pm);
        la::VecI v(b.size());
        for (size_t i = 0; i < b.size(); ++i) v[i] = b[i] - sb[i];
        out.set({s}, v);
      }
      break;
    }
    case 1: {
      for (long s = 0; s < N; ++s)
        for (long t = 0; t < N; ++t) {
          la::VecI v = f.get({G.mul(s, t)});
          la::VecI sat = la::matvec_mod(M.action(s), f.get({t}), pm);
          la::VecI as = f.get({s});
          for (size_t i = 0; i < v.size(); ++i) v[i] -= sat[i] + as[i];
          out.set({s, t}, v);
        }
      break;
    }
    case 2: {
      for (long s = 0; s < N; ++s)
        for (long t = 0; t < N; ++t) {
          long st = G.mul(s, t);
          for (long u = 0; u < N; ++u) {
            la::VecI v = f.get({s, t});
            la::VecI b = f.get({s, G.mul(t, u)});
            la::VecI c = f.get({st, u});
            la::VecI sd = la::matvec_mod(M.action(s), f.get({t, u}), pm);
            for (size_t i = 0; i < v.size(); ++i) v[i] += c[i] - b[i] - sd[i];
            out.set({s, t, u}, v);
          }
        }
      break;
    }
    default:
      throw Error(Error::Kind::bad_input, "coboundary: degree out of range");
  }
  return out;
}

bool is_cocycle(const Cochain& f) {
  Cochain df = coboundary(f);
  if (f.module().free()) return df.is_zero();
  // with relations, "zero" means every value lies in the relation span
  const la::MatI& R = f.module().relations();
  long g = f.module().rank();
  size_t tuples = df.raw().size() / static_cast<size_t>(g);
  la::MatI B(g, 0);
  std::vector<long long> cols;
  for (size_t t = 0; t < tuples; ++t) {
    bool nz = false;
    for (long i = 0; i < g; ++i)
      if (df.raw()[t * static_cast<size_t>(g) + static_cast<size_t>(i)] != 0) nz = true;
    if (!nz) continue;
    for (long i = 0; i < g; ++i)
      cols.push_back(df.raw()[t * static_cast<size_t>(g) + static_cast<size_t>(i)]);
  }
  if (cols.empty()) return true;
  long ncols = static_cast<long>(cols.size()) / g;
  B = la::MatI(g, ncols);
  for (long j = 0; j < ncols; ++j)
    for (long i = 0; i < g; ++i) B(i, j) = cols[static_cast<size_t>(j) * g + static_cast<size_t>(i)];
  return la::solve_mod_many(R, B, f.module().p(), f.module().m()).has_value();
}

Cochain cup_11(const Cochain& x, const Cochain& y) {
  if (x.degree() != 1 || y.degree() != 1)
    throw Error(Error::Kind::bad_input, "cup_11: inputs must be 1-cochains");
  const GModule &Mx = x.module(), &My = y.module();
  if (Mx.group_ptr() != My.group_ptr() || Mx.p() != My.p() || Mx.m() != My.m())
    throw Error(Error::Kind::bad_input, "cup_11: module mismatch");
  if (Mx.weight() != 1 || My.weight() != 1 || Mx.rank() != 1 || My.rank() != 1)
    throw Error(Error::Kind::bad_input, "cup_11: coefficients must be rank-1 weight-1 twists");
  auto M2 = std::make_shared<const GModule>(
      GModule::tate_twist(Mx.group_ptr(), Mx.p(), Mx.m(), 2));
  const FiniteGroup& G = Mx.group();
  long N = G.size();
  long long pm = Mx.pm();
  Cochain out(M2, 2);
  for (long s = 0; s < N; ++s) {
    long long chi_s = Mx.action(s)(0, 0);  // weight-1 action value = chi(s) mod p^m
    for (long t = 0; t < N; ++t) out.set2(s, t, x.at1(s) * chi_s % pm * y.at1(t) % pm);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coboundary solver

SolveOutcome solve_coboundary_eq(const Cochain& c) {
  if (c.degree() != 2) throw Error(Error::Kind::bad_input, "solver: right-hand side must have degree 2");
  const auto& Mp = c.module_ptr();
  const GModule& M = *Mp;
  if (!M.free())
    throw Error(Error::Kind::bad_input, "solver: coefficients must form a free module");
  if (!is_cocycle(c)) throw Error(Error::Kind::not_a_cocycle, "solver: right-hand side is not a 2-cocycle");
  const FiniteGroup& G = M.group();
  long N = G.size(), g = M.rank();
  long p = M.p(), m = M.m();
  long long pm = M.pm();

  // Peel off the identity component: any solution has alpha(e) = -c(e,e) and
  // the remaining equations are exactly the normalized system.
  Cochain alpha_e(Mp, 1);
  {
    la::VecI cee = c.get({0, 0});
    for (auto& v : cee) v = norm_mod(-v, pm);
    alpha_e.set({0}, cee);
  }
  Cochain cn = c - coboundary(alpha_e);
  if (!cn.normalized())
    throw Error(Error::Kind::internal, "solver: cocycle failed to normalize");

  long vars = (N - 1) * g;
  la::MatI D1((N - 1) * (N - 1) * g, vars);
  la::VecI rhs(static_cast<size_t>(D1.rows));
  auto add_block = [&](long row0, long col_elt, const la::MatI& B, long long sign) {
    long c0 = (col_elt - 1) * g;
    for (long i = 0; i < g; ++i)
      for (long j = 0; j < g; ++j)
        D1(row0 + i, c0 + j) = norm_mod(D1(row0 + i, c0 + j) + sign * B(i, j), pm);
  };
  la::MatI I = la::MatI::identity(g);
  for (long s = 1; s < N; ++s)
    for (long t = 1; t < N; ++t) {
      long row0 = ((s - 1) * (N - 1) + (t - 1)) * g;
      long st = G.mul(s, t);
      if (st != 0) add_block(row0, st, I, 1);
      add_block(row0, t, M.action(s), -1);
      add_block(row0, s, I, -1);
      la::VecI v = cn.get({s, t});
      for (long i = 0; i < g; ++i) rhs[static_cast<size_t>(row0 + i)] = v[static_cast<size_t>(i)];
    }
  auto sol = la::solve_mod(D1, rhs, p, m);
  if (!sol.x) return Obstruction{c, sol.obstruction};

  Cochain alpha = alpha_e;
  for (long s = 1; s < N; ++s) {
    la::VecI v(static_cast<size_t>(g));
    for (long i = 0; i < g; ++i) v[static_cast<size_t>(i)] = (*sol.x)[static_cast<size_t>((s - 1) * g + i)];
    alpha.set({s}, v);
  }
  if (!(coboundary(alpha) == c))
    throw Error(Error::Kind::internal, "solver: solution failed re-verification");

  // Solution coset = alpha + image of d0; its size is |A| / |H^0|.
  la::MatI D0((N - 1) * g, g);
  for (long s = 1; s < N; ++s) {
    const la::MatI& A = M.action(s);
    for (long i = 0; i < g; ++i)
      for (long j = 0; j < g; ++j)
        D0((s - 1) * g + i, j) = norm_mod((i == j ? 1 : 0) - A(i, j), pm);
  }
  auto s0 = la::snf_mod(D0, p, m, /*want_U=*/false, /*want_V=*/false);
  Int ker = 1;
  for (long j = 0; j < g; ++j) {
    long a = j < static_cast<long>(s0.diag_val.size()) ? s0.diag_val[j] : m;
    ker *= pow_int(p, a);
  }
  SolveSuccess out{std::move(alpha), pow_int(p, m * g) / ker, {}};
  for (long i = 0; i < g; ++i) {
    Cochain basis(Mp, 0);
    la::VecI e(static_cast<size_t>(g), 0);
    e[static_cast<size_t>(i)] = 1;
    basis.set({}, e);
    out.coset_gens.push_back(coboundary(basis));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Engines

namespace {

// Generators of { x : M x lies in the pointwise relation span }, where the
// equations come in blocks of g rows and each block gets its own slack copy
// of the relations. Returns the x-part generators (xcols rows).
la::MatI relaxed_kernel(const la::MatI& M, const la::MatI& R, long g, long p, long m) {
  long r = R.cols;
  if (r == 0) {
    la::MatI K = la::kernel_mod(M, p, m);
    return K;
  }
  long blocks = M.rows / g;
  la::MatI A(M.rows, M.cols + blocks * r);
  for (long i = 0; i < M.rows; ++i)
    for (long j = 0; j < M.cols; ++j) A(i, j) = M(i, j);
  for (long b = 0; b < blocks; ++b)
    for (long i = 0; i < g; ++i)
      for (long j = 0; j < r; ++j) A(b * g + i, M.cols + b * r + j) = R(i, j);
  la::MatI K = la::kernel_mod(A, p, m);
  la::MatI X(M.cols, K.cols);
  for (long i = 0; i < M.cols; ++i)
    for (long j = 0; j < K.cols; ++j) X(i, j) = K(i, j);
  return X;
}

// Columns of the relations replicated over `blocks` coordinate blocks.
la::MatI relation_block(const la::MatI& R, long blocks) {
  la::MatI B(R.rows * blocks, R.cols * blocks);
  for (long b = 0; b < blocks; ++b)
    for (long i = 0; i < R.rows; ++i)
      for (long j = 0; j < R.cols; ++j) B(b * R.rows + i, b * R.cols + j) = R(i, j);
  return B;
}

Cochain cochain_from_flat(const std::shared_ptr<const GModule>& Mp, int deg, const la::MatI& K,
                          long col) {
  // K rows enumerate non-identity tuples times rank
  const FiniteGroup& G = Mp->group();
  long N = G.size(), g = Mp->rank();
  Cochain f(Mp, deg);
  long tuples = 1;
  for (int i = 0; i < deg; ++i) tuples *= (N - 1);
  for (long t = 0; t < tuples; ++t) {
    std::vector<long> args(static_cast<size_t>(deg));
    long rem = t;
    for (int i = deg - 1; i >= 0; --i) {
      args[static_cast<size_t>(i)] = rem % (N - 1) + 1;
      rem /= (N - 1);
    }
    la::VecI v(static_cast<size_t>(g));
    for (long i = 0; i < g; ++i) v[static_cast<size_t>(i)] = K(t * g + i, col);
    f.set(args, v);
  }
  return f;
}

}  // namespace

la::ModStruct brute_cohomology(const GModule& A, int degree, const EngineOptions& opts) {
  if (degree < 0 || degree > 2)
    throw Error(Error::Kind::bad_input, "brute_cohomology: degree out of range");
  const FiniteGroup& G = A.group();
  long N = G.size(), g = A.rank();
  long p = A.p(), m = A.m();
  long long pm = A.pm();
  const la::MatI& R = A.relations();
  if (N == 1) return degree == 0 ? la::cokernel_mod(R, p, m) : la::ModStruct{};
  const std::vector<long>& gens = G.gens();
  long ng = static_cast<long>(gens.size());

  long long dim1 = static_cast<long long>(N - 1) * g;
  long long dim2 = static_cast<long long>(N - 1) * (N - 1) * g;
  if (dim2 * (ng + 1) > opts.max_table || dim2 > opts.max_table / (N - 1))
    throw Error(Error::Kind::size_ceiling, "brute_cohomology: cochain tables exceed the bound");

  auto Mp = std::make_shared<const GModule>(A);

  if (degree == 0) {
    la::MatI E(ng * g, g);
    for (long b = 0; b < ng; ++b) {
      const la::MatI& As = A.action(gens[static_cast<size_t>(b)]);
      for (long i = 0; i < g; ++i)
        for (long j = 0; j < g; ++j)
          E(b * g + i, j) = norm_mod((i == j ? 1 : 0) - As(i, j), pm);
    }
    la::MatI num = relaxed_kernel(E, R, g, p, m);
    return la::subquotient_mod(num, R, p, m);
  }

  // index helpers over non-identity elements
  auto col1 = [&](long s) { return (s - 1) * g; };
  auto col2 = [&](long s, long t) { return ((s - 1) * (N - 1) + (t - 1)) * g; };

  if (degree == 1) {
    la::MatI E((N - 1) * ng * g, static_cast<long>(dim1));
    long row = 0;
    for (long s = 1; s < N; ++s)
      for (long b = 0; b < ng; ++b) {
        long t = gens[static_cast<size_t>(b)];
        long st = G.mul(s, t);
        const la::MatI& As = A.action(s);
        for (long i = 0; i < g; ++i) {
          if (st != 0) E(row + i, col1(st) + i) = norm_mod(E(row + i, col1(st) + i) + 1, pm);
          for (long j = 0; j < g; ++j)
            E(row + i, col1(t) + j) = norm_mod(E(row + i, col1(t) + j) - As(i, j), pm);
          E(row + i, col1(s) + i) = norm_mod(E(row + i, col1(s) + i) - 1, pm);
        }
        row += g;
      }
    la::MatI num = relaxed_kernel(E, R, g, p, m);
    for (long j = 0; j < num.cols; ++j)
      if (!is_cocycle(cochain_from_flat(Mp, 1, num, j)))
        throw Error(Error::Kind::internal, "brute_cohomology: relaxed kernel is not a cocycle");
    // denominator: coboundaries of 0-cochains plus pointwise relation moves
    la::MatI D0(static_cast<long>(dim1), g);
    for (long s = 1; s < N; ++s) {
      const la::MatI& As = A.action(s);
      for (long i = 0; i < g; ++i)
        for (long j = 0; j < g; ++j) D0(col1(s) + i, j) = norm_mod((i == j ? 1 : 0) - As(i, j), pm);
    }
    la::MatI den = la::hconcat(D0, relation_block(R, N - 1));
    return la::subquotient_mod(num, den, p, m);
  }

  // degree == 2
  la::MatI E(static_cast<long>((N - 1) * (N - 1) * ng) * g, static_cast<long>(dim2));
  long row = 0;
  for (long s = 1; s < N; ++s)
    for (long t = 1; t < N; ++t) {
      long st = G.mul(s, t);
      const la::MatI& As = A.action(s);
      for (long b = 0; b < ng; ++b) {
        long u = gens[static_cast<size_t>(b)];
        long tu = G.mul(t, u);
        for (long i = 0; i < g; ++i) {
          E(row + i, col2(s, t) + i) = norm_mod(E(row + i, col2(s, t) + i) + 1, pm);
          if (tu != 0)
            E(row + i, col2(s, tu) + i) = norm_mod(E(row + i, col2(s, tu) + i) - 1, pm);
          if (st != 0)
            E(row + i, col2(st, u) + i) = norm_mod(E(row + i, col2(st, u) + i) + 1, pm);
          for (long j = 0; j < g; ++j)
            E(row + i, col2(t, u) + j) = norm_mod(E(row + i, col2(t, u) + j) - As(i, j), pm);
        }
        row += g;
      }
    }
  la::MatI num = relaxed_kernel(E, R, g, p, m);
  for (long j = 0; j < num.cols; ++j)
    if (!is_cocycle(cochain_from_flat(Mp, 2, num, j)))
      throw Error(Error::Kind::internal, "brute_cohomology: relaxed kernel is not a cocycle");
  la::MatI D1(static_cast<long>(dim2), static_cast<long>(dim1));
  for (long s = 1; s < N; ++s)
    for (long t = 1; t < N; ++t) {
      long st = G.mul(s, t);
      const la::MatI& As = A.action(s);
      long r0 = col2(s, t);
      for (long i = 0; i < g; ++i) {
        if (st != 0) D1(r0 + i, col1(st) + i) = norm_mod(D1(r0 + i, col1(st) + i) + 1, pm);
        for (long j = 0; j < g; ++j)
          D1(r0 + i, col1(t) + j) = norm_mod(D1(r0 + i, col1(t) + j) - As(i, j), pm);
        D1(r0 + i, col1(s) + i) = norm_mod(D1(r0 + i, col1(s) + i) - 1, pm);
      }
    }
  la::MatI den = la::hconcat(D1, relation_block(R, (N - 1) * (N - 1)));
  return la::subquotient_mod(num, den, p, m);
}

la::ModStruct cyclic_cohomology_core(const la::MatI& act, long order, long p, long m,
                                     const la::MatI& relations, int degree) {
  if (degree < 0) throw Error(Error::Kind::bad_input, "cyclic cohomology: negative degree");
  if (act.rows != act.cols) throw Error(Error::Kind::bad_input, "cyclic cohomology: action not square");
  long g = act.rows;
  long long pm = la::pow_ll(p, m);
  la::MatI R = relations;
  if (R.rows == 0 && R.cols == 0) R = la::MatI(g, 0);
  if (R.rows != g) throw Error(Error::Kind::bad_input, "cyclic cohomology: relation shape");

  la::MatI A = la::mat_mod(act, pm);
  la::MatI Am1 = A;
  for (long i = 0; i < g; ++i) Am1(i, i) = norm_mod(Am1(i, i) - 1, pm);
  la::MatI Nm(g, g), pw = la::MatI::identity(g);
  for (long i = 0; i < order; ++i) {
    for (long r = 0; r < g; ++r)
      for (long c = 0; c < g; ++c) Nm(r, c) = (Nm(r, c) + pw(r, c)) % pm;
    pw = la::matmul_mod(A, pw, pm);
  }
  if (!(pw == la::MatI::identity(g)))
    throw Error(Error::Kind::bad_input, "cyclic cohomology: action order incompatible with the group");

  if (degree == 0) {
    la::MatI num = relaxed_kernel(Am1, R, g, p, m);
    return la::subquotient_mod(num, R, p, m);
  }
  if (degree % 2 == 1) {
    la::MatI num = relaxed_kernel(Nm, R, g, p, m);
    la::MatI den = la::hconcat(Am1, R);
    return la::subquotient_mod(num, den, p, m);
  }
  la::MatI num = relaxed_kernel(Am1, R, g, p, m);
  la::MatI den = la::hconcat(Nm, R);
  return la::subquotient_mod(num, den, p, m);
}

la::ModStruct cyclic_cohomology(const GModule& A, int degree) {
  auto gen = A.group().cyclic_generator();
  if (!gen) throw Error(Error::Kind::not_cyclic, "cyclic_cohomology: group is not cyclic");
  return cyclic_cohomology_core(A.action(*gen), A.group().size(), A.p(), A.m(), A.relations(),
                                degree);
}

}  // namespace zetalift::cohom
