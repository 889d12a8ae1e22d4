#include "zetalift/heis.hpp"

namespace zetalift::heis {

using cohom::Cochain;
using cohom::FiniteGroup;
using cohom::GModule;

namespace {

long long norm_mod(long long v, long long pm) {
  v %= pm;
  return v < 0 ? v + pm : v;
}

// chi values live mod chi_modulus; the coordinates only see them mod p^m.
long long chi_mod_pm(const FiniteGroup& G, long g, long long pm) {
  return norm_mod(G.chi(g), pm);
}

void check_coordinate_cochain(const Cochain& k, const char* what) {
  if (k.degree() != 1) throw Error(Error::Kind::bad_input, std::string(what) + ": degree-1 cochain required");
  const GModule& M = k.module();
  if (M.weight() != 1 || M.rank() != 1 || !M.free())
    throw Error(Error::Kind::bad_input, std::string(what) + ": weight-1 rank-1 free coefficients required");
}

}  // namespace

HeisParams HeisParams::make(long p, long m) {
  check_odd_prime(p);
  if (m <= 0) throw Error(Error::Kind::bad_input, "heis: m must be positive");
  HeisParams hp;
  hp.p = p;
  hp.m = m;
  hp.pm = la::pow_ll(p, m);
  return hp;
}

HeisElt heis_mul(const HeisParams& hp, const HeisElt& a, const HeisElt& b) {
  return HeisElt{norm_mod(a.x + b.x, hp.pm), norm_mod(a.y + b.y, hp.pm),
                 norm_mod(a.z + b.z + a.x * b.y, hp.pm)};
}

HeisElt heis_inv(const HeisParams& hp, const HeisElt& a) {
  return HeisElt{norm_mod(-a.x, hp.pm), norm_mod(-a.y, hp.pm),
                 norm_mod(-a.z + a.x * a.y, hp.pm)};
}

HeisElt heis_act(const HeisParams& hp, long long c, const HeisElt& a) {
  c = norm_mod(c, hp.pm);
  if (c % hp.p == 0) throw Error(Error::Kind::bad_input, "heis_act: character value must be a unit");
  long long c2 = (c * c) % hp.pm;
  return HeisElt{norm_mod(c * a.x, hp.pm), norm_mod(c * a.y, hp.pm), norm_mod(c2 * a.z, hp.pm)};
}

HeisCochain::HeisCochain(std::shared_ptr<const FiniteGroup> G, HeisParams hp)
    : G_(std::move(G)), hp_(hp) {
  if (!G_) throw Error(Error::Kind::bad_input, "heis cochain: null group");
  if (!G_->has_chi() || G_->chi_modulus() % hp_.pm != 0)
    throw Error(Error::Kind::bad_input, "heis cochain: group character incompatible with p^m");
  v_.assign(static_cast<size_t>(G_->size()), HeisElt{});
}

const HeisElt& HeisCochain::at(long g) const {
  if (g < 0 || g >= G_->size()) throw Error(Error::Kind::bad_input, "heis cochain: element out of range");
  return v_[static_cast<size_t>(g)];
}

void HeisCochain::set(long g, const HeisElt& v) {
  if (g < 0 || g >= G_->size()) throw Error(Error::Kind::bad_input, "heis cochain: element out of range");
  v_[static_cast<size_t>(g)] =
      HeisElt{norm_mod(v.x, hp_.pm), norm_mod(v.y, hp_.pm), norm_mod(v.z, hp_.pm)};
}

bool HeisCochain::operator==(const HeisCochain& o) const {
  return G_ == o.G_ && hp_ == o.hp_ && v_ == o.v_;
}

HeisCochain sigma_lift(const Cochain& kx, const Cochain& ky) {
  check_coordinate_cochain(kx, "sigma_lift");
  check_coordinate_cochain(ky, "sigma_lift");
  const GModule& Mx = kx.module();
  const GModule& My = ky.module();
  if (Mx.group_ptr() != My.group_ptr() || Mx.p() != My.p() || Mx.m() != My.m())
    throw Error(Error::Kind::bad_input, "sigma_lift: mismatched coordinate modules");
  HeisCochain k(Mx.group_ptr(), HeisParams::make(Mx.p(), Mx.m()));
  for (long g = 0; g < k.group().size(); ++g) k.set(g, HeisElt{kx.at1(g), ky.at1(g), 0});
  return k;
}

cohom::Cochain defect(const HeisCochain& k) {
  const FiniteGroup& G = k.group();
  const HeisParams& hp = k.params();
  auto M2 = std::make_shared<const GModule>(GModule::tate_twist(k.group_ptr(), hp.p, hp.m, 2));
  Cochain c(M2, 2);
  for (long s = 0; s < G.size(); ++s)
    for (long t = 0; t < G.size(); ++t) {
      HeisElt lhs = heis_mul(hp, k.at(s), heis_act(hp, chi_mod_pm(G, s, hp.pm), k.at(t)));
      const HeisElt& rhs = k.at(G.mul(s, t));
      if (lhs.x != rhs.x || lhs.y != rhs.y)
        throw Error(Error::Kind::bad_input, "defect: discrepancy leaves the center");
      c.set2(s, t, norm_mod(lhs.z - rhs.z, hp.pm));
    }
  return c;
}

bool is_cocycle_nonab(const HeisCochain& k) {
  const FiniteGroup& G = k.group();
  const HeisParams& hp = k.params();
  for (long s = 0; s < G.size(); ++s)
    for (long t = 0; t < G.size(); ++t) {
      HeisElt lhs = heis_mul(hp, k.at(s), heis_act(hp, chi_mod_pm(G, s, hp.pm), k.at(t)));
      if (!(lhs == k.at(G.mul(s, t)))) return false;
    }
  return true;
}

std::pair<Cochain, Cochain> abelianize(const HeisCochain& k) {
  const HeisParams& hp = k.params();
  auto M1 = std::make_shared<const GModule>(GModule::tate_twist(k.group_ptr(), hp.p, hp.m, 1));
  Cochain kx(M1, 1), ky(M1, 1);
  for (long g = 0; g < k.group().size(); ++g) {
    kx.set1(g, k.at(g).x);
    ky.set1(g, k.at(g).y);
  }
  return {kx, ky};
}

LiftOutcome lift_pair(const Cochain& kx, const Cochain& ky) {
  if (!cohom::is_cocycle(kx) || !cohom::is_cocycle(ky))
    throw Error(Error::Kind::not_a_cocycle, "lift_pair: coordinate cochains must be cocycles");
  HeisCochain sig = sigma_lift(kx, ky);
  Cochain cup = defect(sig);  // equals the cup product of the pair
  cohom::SolveOutcome out = cohom::solve_coboundary_eq(-cup);
  if (auto* ob = std::get_if<cohom::Obstruction>(&out)) {
    // Report the cup class itself: negate the coordinates found for -cup.
    cohom::Obstruction res{cup, ob->cokernel_coords};
    for (auto& [idx, val] : res.cokernel_coords) val = norm_mod(-val, sig.params().pm);
    return res;
  }
  const Cochain& alpha = std::get<cohom::SolveSuccess>(out).alpha;
  HeisCochain kt = sig;
  for (long g = 0; g < kt.group().size(); ++g) {
    HeisElt v = kt.at(g);
    v.z = norm_mod(-alpha.at1(g), sig.params().pm);
    kt.set(g, v);
  }
  if (!is_cocycle_nonab(kt)) throw Error(Error::Kind::internal, "lift_pair: lifted cochain failed re-verification");
  return kt;
}

namespace {

CoordinateModel coordinate_model(FiniteGroup&& group, long p, long m) {
  auto G = std::make_shared<const FiniteGroup>(std::move(group));
  auto M1 = std::make_shared<const GModule>(GModule::tate_twist(G, p, m, 1));
  long long pm = la::pow_ll(p, m);
  Cochain kx(M1, 1), ky(M1, 1);
  for (long g = 0; g < G->size(); ++g) {
    kx.set1(g, (g / pm) % pm);  // b1 in the documented element encoding
    ky.set1(g, g % pm);         // b2
  }
  if (!cohom::is_cocycle(kx) || !cohom::is_cocycle(ky))
    throw Error(Error::Kind::internal, "coordinate model: translation parts are not cocycles");
  return CoordinateModel{G, M1, kx, ky};
}

}  // namespace

CoordinateModel kummer_model(long p, long m) {
  return coordinate_model(FiniteGroup::kummer_semidirect(p, m), p, m);
}

CoordinateModel translation_model(long p, long m) {
  return coordinate_model(FiniteGroup::translation_square(p, m), p, m);
}

}  // namespace zetalift::heis
