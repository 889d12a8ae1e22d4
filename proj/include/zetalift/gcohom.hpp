#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "zetalift/base.hpp"
#include "zetalift/linalg.hpp"

// Cohomology of a finite group G with coefficients in a finitely presented
// Z/p^m-module, through explicit normalized cochain complexes. The
// differential convention used throughout is
//   (d beta)(s)      = beta - s.beta
//   (d alpha)(s,t)   = alpha(st) - s.alpha(t) - alpha(s)
//   (d c)(s,t,u)     = c(s,t) - c(s,tu) + c(st,u) - s.c(t,u)
// which is the negative of the usual bar differential; kernels and images
// coincide, so all cohomology groups agree with the standard ones.
namespace zetalift::cohom {

// A finite group given by its full multiplication table. Element 0 is the
// identity. An optional character chi (values in (Z/chi_modulus)^*) drives
// the Tate-twist module constructions.
class FiniteGroup {
public:
  static FiniteGroup from_table(std::vector<std::vector<long>> table,
                                std::vector<std::string> labels = {},
                                std::vector<long long> chi = {}, long long chi_modulus = 0);
  // Z/k under addition; element index = residue.
  static FiniteGroup cyclic(long k);
  // (Z/p^n)^* under multiplication, elements in ascending residue order,
  // chi = the residue itself.
  static FiniteGroup units_mod(long p, long n);
  // The subgroup 1 + (p) of (Z/p^n)^*, cyclically generated by 1 + p;
  // element i is the residue (1+p)^i.
  static FiniteGroup one_plus_p(long p, long n);
  // (Z/p^m)^2 x| (Z/p^m)^* with (b1,b2|a)(b1',b2'|a') = (b1+a*b1', b2+a*b2' | a*a')
  // and chi = a. Element index = (unit_position(a) * p^m + b1) * p^m + b2,
  // units in ascending residue order.
  static FiniteGroup kummer_semidirect(long p, long m);
  // (Z/p^m)^2 under addition with trivial chi; element index = b1 * p^m + b2.
  static FiniteGroup translation_square(long p, long m);

  long size() const { return n_; }
  long mul(long a, long b) const { return table_[static_cast<size_t>(a) * n_ + b]; }
  long inv(long a) const { return inv_[static_cast<size_t>(a)]; }
  long order_of(long g) const;
  // Smallest-index element of full order, if one exists.
  std::optional<long> cyclic_generator() const;
  // A (greedily minimized) generating set; never contains the identity.
  const std::vector<long>& gens() const { return gens_; }
  const std::string& label(long g) const { return labels_[static_cast<size_t>(g)]; }
  bool has_chi() const { return chi_modulus_ != 0; }
  long long chi(long g) const;
  long long chi_modulus() const { return chi_modulus_; }

private:
  FiniteGroup() = default;
  void finalize();  // verifies the table, fills inverses and generators

  long n_ = 0;
  std::vector<long> table_, inv_, gens_;
  std::vector<std::string> labels_;
  std::vector<long long> chi_;
  long long chi_modulus_ = 0;
};

// A left G-module presented as (Z/p^m)^rank / column-span(relations), with
// the action of each group element given by a rank x rank matrix on
// generator coordinates. Actions are verified to be a homomorphism and to
// preserve the relation span.
class GModule {
public:
  static GModule trivial(std::shared_ptr<const FiniteGroup> G, long p, long m, long rank);
  // Rank-1 free module on which g acts by chi(g)^weight.
  static GModule tate_twist(std::shared_ptr<const FiniteGroup> G, long p, long m, long weight);
  // Actions specified on G.gens() and closed under multiplication.
  static GModule from_generator_actions(std::shared_ptr<const FiniteGroup> G, long p, long m,
                                        long rank, la::MatI relations,
                                        const std::vector<std::pair<long, la::MatI>>& gen_acts);
  // Convenience for cyclic G: the action of its distinguished generator.
  static GModule cyclic_from_action(std::shared_ptr<const FiniteGroup> G, long p, long m,
                                    la::MatI gen_action, la::MatI relations = la::MatI());

  const FiniteGroup& group() const { return *G_; }
  const std::shared_ptr<const FiniteGroup>& group_ptr() const { return G_; }
  long p() const { return p_; }
  long m() const { return m_; }
  long long pm() const { return pm_; }
  long rank() const { return rank_; }
  const la::MatI& relations() const { return relations_; }
  bool free() const { return relations_.cols == 0; }
  const la::MatI& action(long g) const { return acts_[static_cast<size_t>(g)]; }
  // Tate-twist weight, or -1 when the module was not built as a twist.
  int weight() const { return weight_; }
  Int size() const;  // |module| as an abelian group

private:
  GModule() = default;
  void verify() const;

  std::shared_ptr<const FiniteGroup> G_;
  long p_ = 0, m_ = 0, rank_ = 0;
  long long pm_ = 0;
  la::MatI relations_;
  std::vector<la::MatI> acts_;
  int weight_ = -1;
};

// An inhomogeneous k-cochain G^k -> A, stored as a dense table of generator
// coordinate vectors over all argument tuples (identity included). Degrees
// 0..3 are representable; degree-3 tables only arise as coboundaries.
class Cochain {
public:
  Cochain(std::shared_ptr<const GModule> M, int degree);

  int degree() const { return deg_; }
  const GModule& module() const { return *M_; }
  const std::shared_ptr<const GModule>& module_ptr() const { return M_; }

  la::VecI get(const std::vector<long>& args) const;
  void set(const std::vector<long>& args, const la::VecI& v);
  // Rank-1 conveniences.
  long long at1(long s) const;
  long long at2(long s, long t) const;
  void set1(long s, long long v);
  void set2(long s, long t, long long v);

  bool is_zero() const;
  bool normalized() const;  // vanishes whenever some argument is the identity
  Cochain operator+(const Cochain& o) const;
  Cochain operator-() const;
  Cochain operator-(const Cochain& o) const;
  Cochain scaled(long long c) const;
  bool operator==(const Cochain& o) const { return deg_ == o.deg_ && v_ == o.v_; }

  const std::vector<long long>& raw() const { return v_; }
  std::vector<long long>& raw() { return v_; }
  size_t flat_index(const std::vector<long>& args) const;

private:
  std::shared_ptr<const GModule> M_;
  int deg_ = 0;
  std::vector<long long> v_;  // length N^deg * rank, values reduced mod p^m
};

Cochain coboundary(const Cochain& f);  // degree 0, 1 or 2 input
// d f = 0, with values compared modulo the relation span.
bool is_cocycle(const Cochain& f);
// Degree-1 x degree-1 pairing into weight 2: (x u y)(s,t) = x(s) * chi(s) * y(t).
// Both inputs must be cochains of weight-1 rank-1 free twists of one group.
Cochain cup_11(const Cochain& x, const Cochain& y);

// Outcome of d alpha = c. On failure the nonzero coordinates of c in the
// solver's cokernel basis certify that no solution exists.
struct Obstruction {
  Cochain representative;
  std::vector<std::pair<long, long long>> cokernel_coords;
};
struct SolveSuccess {
  Cochain alpha;                    // one solution
  Int coset_size;                   // |A| / |H^0|, the number of solutions
  std::vector<Cochain> coset_gens;  // coboundaries of the module basis vectors
};
using SolveOutcome = std::variant<SolveSuccess, Obstruction>;
// Solves d alpha = c for a degree-2 cocycle c over a free module.
SolveOutcome solve_coboundary_eq(const Cochain& c);

struct EngineOptions {
  long long max_table = 50'000'000;  // cap on cochain-table entries
};

// H^degree by normalized-bar-complex linear algebra, degrees 0..2. Cocycle
// conditions are imposed with the last argument running over G.gens() (exact,
// by induction on word length) and every kernel generator is re-verified
// against the full differential.
la::ModStruct brute_cohomology(const GModule& A, int degree, const EngineOptions& opts = {});
// H^degree of a cyclic group through the periodic complex (sigma - 1, N).
la::ModStruct cyclic_cohomology(const GModule& A, int degree);
la::ModStruct cyclic_cohomology_core(const la::MatI& act, long order, long p, long m,
                                     const la::MatI& relations, int degree);

}  // namespace zetalift::cohom
