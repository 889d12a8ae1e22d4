#include <random>
#include <variant>

#include "doctest.h"
#include "zetalift/heis.hpp"

using namespace zetalift;
using namespace zetalift::heis;
using cohom::Cochain;
using cohom::FiniteGroup;
using cohom::GModule;
using cohom::Obstruction;

namespace {

HeisElt rand_elt(std::mt19937_64& rng, long long pm) {
  std::uniform_int_distribution<long long> d(0, pm - 1);
  return HeisElt{d(rng), d(rng), d(rng)};
}

}  // namespace

TEST_CASE("heisenberg group law") {
  HeisParams hp = HeisParams::make(3, 1);
  CHECK(hp.pm == 3);
  CHECK(heis_mul(hp, {1, 0, 0}, {0, 1, 0}) == HeisElt{1, 1, 1});
  CHECK(heis_mul(hp, {0, 1, 0}, {1, 0, 0}) == HeisElt{1, 1, 0});
  CHECK(heis_inv(hp, {1, 1, 1}) == HeisElt{2, 2, 0});

  // associativity, inverses and the twisted action on random triples
  std::mt19937_64 rng(7);
  for (HeisParams q : {HeisParams::make(3, 1), HeisParams::make(5, 2)}) {
    for (int i = 0; i < 20; ++i) {
      HeisElt a = rand_elt(rng, q.pm), b = rand_elt(rng, q.pm), c = rand_elt(rng, q.pm);
      CHECK(heis_mul(q, heis_mul(q, a, b), c) == heis_mul(q, a, heis_mul(q, b, c)));
      CHECK(heis_mul(q, a, heis_inv(q, a)) == HeisElt{0, 0, 0});
      CHECK(heis_mul(q, heis_inv(q, a), a) == HeisElt{0, 0, 0});
      // (x,y,z) -> (cx, cy, c^2 z) is an automorphism for units c
      for (long long u : {1LL, 2LL, q.pm - 1}) {
        CHECK(heis_act(q, u, heis_mul(q, a, b)) ==
              heis_mul(q, heis_act(q, u, a), heis_act(q, u, b)));
      }
      CHECK(heis_act(q, 1, a) == a);
      CHECK(heis_act(q, 2, heis_act(q, 2, a)) == heis_act(q, 4 % q.pm, a));
    }
  }
  CHECK(heis_act(hp, 2, HeisElt{1, 1, 1}) == HeisElt{2, 2, 1});
  CHECK_THROWS_AS(heis_act(hp, 3, HeisElt{1, 0, 0}), Error);
  CHECK_THROWS_AS(HeisParams::make(4, 1), Error);
  CHECK_THROWS_AS(HeisParams::make(3, 0), Error);
}

TEST_CASE("coordinate models carry cocycle pairs") {
  CoordinateModel km = kummer_model(3, 1);
  CHECK(km.G->size() == 18);
  CHECK(cohom::is_cocycle(km.kx));
  CHECK(cohom::is_cocycle(km.ky));
  // element (b1,b2|a) = (1,2|2): index (1*3+1)*3+2 = 14
  CHECK(km.G->label(14) == "(1,2|2)");
  CHECK(km.kx.at1(14) == 1);
  CHECK(km.ky.at1(14) == 2);
  CHECK(km.G->chi(14) == 2);

  CoordinateModel tm = translation_model(3, 2);
  CHECK(tm.G->size() == 81);
  CHECK(tm.kx.at1(4 * 9 + 7) == 4);
  CHECK(tm.ky.at1(4 * 9 + 7) == 7);
  CHECK(cohom::is_cocycle(tm.kx));
  CHECK(cohom::is_cocycle(tm.ky));
}

TEST_CASE("defect of the coordinate section equals the cup product") {
  for (long p : {3L, 5L}) {
    CoordinateModel km = kummer_model(p, 1);
    Cochain cup = cohom::cup_11(km.kx, km.ky);
    Cochain def = defect(sigma_lift(km.kx, km.ky));
    CHECK(def == cup);
    CHECK(cohom::is_cocycle(def));
  }
  CoordinateModel tm = translation_model(3, 1);
  CHECK(defect(sigma_lift(tm.kx, tm.ky)) == cohom::cup_11(tm.kx, tm.ky));
}

TEST_CASE("defect rejects non-central discrepancies") {
  CoordinateModel km = kummer_model(3, 1);
  HeisCochain k(km.G, HeisParams::make(3, 1));
  // x part supported on (1,0|1) alone is not a cocycle: its square (2,0|1)
  // would need x = 2
  k.set(3, HeisElt{1, 0, 0});
  CHECK_FALSE(is_cocycle_nonab(k));
  CHECK_THROWS_AS(defect(k), Error);
}

TEST_CASE("abelianize recovers the coordinates of a section") {
  CoordinateModel km = kummer_model(5, 1);
  HeisCochain sig = sigma_lift(km.kx, km.ky);
  auto [ax, ay] = abelianize(sig);
  CHECK(ax == km.kx);
  CHECK(ay == km.ky);
}

TEST_CASE("lift_pair on the kummer model: full obstruction pattern") {
  CoordinateModel km = kummer_model(3, 1);
  int lifts = 0, obstructed = 0;
  for (long long c1 = 0; c1 < 3; ++c1)
    for (long long c2 = 0; c2 < 3; ++c2)
      for (long long d1 = 0; d1 < 3; ++d1)
        for (long long d2 = 0; d2 < 3; ++d2) {
          Cochain phi = km.kx.scaled(c1) + km.ky.scaled(c2);
          Cochain psi = km.kx.scaled(d1) + km.ky.scaled(d2);
          LiftOutcome out = lift_pair(phi, psi);
          bool lifted = std::holds_alternative<HeisCochain>(out);
          // the cup class is (c1*d2 - c2*d1) times the generator's class
          bool det_zero = ((c1 * d2 - c2 * d1) % 3 + 3) % 3 == 0;
          CHECK(lifted == det_zero);
          if (lifted) {
            const HeisCochain& kt = std::get<HeisCochain>(out);
            ++lifts;
            CHECK(is_cocycle_nonab(kt));
            auto [ax, ay] = abelianize(kt);
            CHECK(ax == phi);
            CHECK(ay == psi);
          } else {
            const Obstruction& ob = std::get<Obstruction>(out);
            ++obstructed;
            CHECK(!ob.cokernel_coords.empty());
            CHECK(ob.representative == cohom::cup_11(phi, psi));
          }
        }
  CHECK(lifts == 33);
  CHECK(obstructed == 48);
}

TEST_CASE("lift_pair on the translation model") {
  CoordinateModel tm = translation_model(3, 1);
  // cup(kx, kx) is symmetric, hence a coboundary for odd p: the pair lifts
  LiftOutcome same = lift_pair(tm.kx, tm.kx);
  CHECK(std::holds_alternative<HeisCochain>(same));
  // cup(kx, ky) is the commutator pairing of the order-27 Heisenberg
  // extension: never a coboundary
  LiftOutcome cross = lift_pair(tm.kx, tm.ky);
  CHECK(std::holds_alternative<Obstruction>(cross));

  // a non-cocycle coordinate is rejected up front
  Cochain bad(tm.M1, 1);
  bad.set1(1, 1);
  CHECK_FALSE(cohom::is_cocycle(bad));
  CHECK_THROWS_AS(lift_pair(bad, tm.ky), Error);
}

TEST_CASE("lifted cocycles on a larger modulus") {
  CoordinateModel tm = translation_model(3, 2);
  LiftOutcome same = lift_pair(tm.kx, tm.kx);
  CHECK(std::holds_alternative<HeisCochain>(same));
  const HeisCochain& kt = std::get<HeisCochain>(same);
  CHECK(kt.params().pm == 9);
  CHECK(is_cocycle_nonab(kt));
  // the center really carries z-values: some entry is nonzero
  bool nonzero = false;
  for (long g = 0; g < tm.G->size(); ++g) nonzero = nonzero || kt.at(g).z != 0;
  CHECK(nonzero);
}
