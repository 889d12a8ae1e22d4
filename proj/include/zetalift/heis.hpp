#pragma once

#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "zetalift/gcohom.hpp"

// Cochains valued in the finite Heisenberg group over Z/p^m: triples (x,y,z)
// with (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y'), whose center is the
// z-axis. A group element with character value c acts through c on the two
// translation coordinates and through c^2 on the center. A pair of weight-1
// coordinate cocycles lifts to a Heisenberg-valued 1-cocycle exactly when
// its cup product is a coboundary of weight-2 cochains.
namespace zetalift::heis {

struct HeisParams {
  long p = 0;
  long m = 0;
  long long pm = 0;

  static HeisParams make(long p, long m);
  bool operator==(const HeisParams& o) const { return p == o.p && m == o.m; }
};

struct HeisElt {
  long long x = 0, y = 0, z = 0;
  bool operator==(const HeisElt& o) const = default;
};

HeisElt heis_mul(const HeisParams& hp, const HeisElt& a, const HeisElt& b);
HeisElt heis_inv(const HeisParams& hp, const HeisElt& a);
// Action through a unit c mod p^m: (x,y,z) -> (c*x, c*y, c^2*z).
HeisElt heis_act(const HeisParams& hp, long long c, const HeisElt& a);

// A 1-cochain G -> H(Z/p^m), stored over all group elements. The group must
// carry a character whose modulus is divisible by p^m.
class HeisCochain {
 public:
  HeisCochain(std::shared_ptr<const cohom::FiniteGroup> G, HeisParams hp);

  const cohom::FiniteGroup& group() const { return *G_; }
  const std::shared_ptr<const cohom::FiniteGroup>& group_ptr() const { return G_; }
  const HeisParams& params() const { return hp_; }
  const HeisElt& at(long g) const;
  void set(long g, const HeisElt& v);
  bool operator==(const HeisCochain& o) const;

 private:
  std::shared_ptr<const cohom::FiniteGroup> G_;
  HeisParams hp_;
  std::vector<HeisElt> v_;
};

// The coordinate section s -> (kx(s), ky(s), 0). Both inputs must be
// degree-1 cochains on weight-1 rank-1 free twists of the same group.
HeisCochain sigma_lift(const cohom::Cochain& kx, const cohom::Cochain& ky);

// The central defect c with k(s) * s.k(t) = central(c(s,t)) * k(st), as a
// weight-2 2-cochain; errors when some defect leaves the center, which
// happens exactly when a coordinate part is not a cocycle.
cohom::Cochain defect(const HeisCochain& k);

// k(st) == k(s) * s.k(t) in the Heisenberg group, for all s, t.
bool is_cocycle_nonab(const HeisCochain& k);

// The two coordinate 1-cochains (x part, y part) as weight-1 cochains.
std::pair<cohom::Cochain, cohom::Cochain> abelianize(const HeisCochain& k);

// Lift of a pair of weight-1 cocycles to a Heisenberg-valued cocycle with
// those coordinates: kt(s) = (kx(s), ky(s), -alpha(s)) for a weight-2
// solution of d alpha = -(kx u ky). On failure the obstruction reports the
// cup product and its nonzero cokernel coordinates.
using LiftOutcome = std::variant<HeisCochain, cohom::Obstruction>;
LiftOutcome lift_pair(const cohom::Cochain& kx, const cohom::Cochain& ky);

// A group with a designated pair of weight-1 translation-coordinate
// cocycles, the seed data for lifting experiments.
struct CoordinateModel {
  std::shared_ptr<const cohom::FiniteGroup> G;
  std::shared_ptr<const cohom::GModule> M1;  // weight-1 coefficients
  cohom::Cochain kx, ky;                     // the two translation coordinates
};

// (Z/p^m)^2 x| (Z/p^m)^*: kx, ky read off b1, b2.
CoordinateModel kummer_model(long p, long m);
// (Z/p^m)^2 with trivial character.
CoordinateModel translation_model(long p, long m);

}  // namespace zetalift::heis
