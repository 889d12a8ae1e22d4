#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zetalift/cyc_units.hpp"
#include "zetalift/gcohom.hpp"
#include "zetalift/valuations.hpp"

// Cohomology of the layers entering the two-column descent: weight-2 twists
// over the full cyclotomic Galois group, the wild subgroup 1 + (p), and the
// T-unit layer E_T / (p^n-th powers) with the twisted Galois action on an
// explicit generating set, assembled from exact identities and certified
// through auxiliary-prime discrete logarithms.
namespace zetalift::specseq {

// H^degree((Z/p^n)^*, Z/p^m(2)) for 1 <= m <= n, degrees 0..3.
la::ModStruct e2_row0(long p, long n, long m, int degree);

// H^degree(1 + (p) inside (Z/p^n)^*, Z/p^n(2)), degrees 0..3. Every cyclic
// order is at most p; the computation is repeated with a second generator
// whenever the group is nontrivial and the two results must agree.
la::ModStruct one_plus_p_cohomology(long p, long n, int degree);

struct E11Options {
  std::uint64_t seed = 0;
  int confidence = 20;     // certification strength for p^n-th power tests
  long extra_primes = 12;  // auxiliary primes beyond the generator count
  long search_box = 4;     // coefficient box for place-generator searches
};

// The unit layer as a free Z/p^n-module: generators zeta, the xi_a over the
// +-orbit representatives, and one generator per place above T, with the
// matrix of the twisted action of the smallest generator gamma of (Z/p^n)^*.
struct E11Presentation {
  long p = 0, n = 0;
  std::vector<Int> T;
  std::vector<std::string> gen_labels;    // "zeta", "xi_a"..., place labels
  long unit_gens = 0;                     // leading generators with all valuations zero
  long gamma = 0;                         // acting generator of (Z/p^n)^*
  la::MatI action;                        // column j expresses gamma act gen_j, mod p^n
  std::vector<std::string> place_labels;  // aligned with the trailing generators
};

// Requires a regular p contained in T. The expression of each twisted
// generator image is solved from discrete logarithms at auxiliary primes,
// required to be unique, certified by a power test, and cross-checked
// against the valuation vectors of the places above T.
E11Presentation e11_assemble(long p, long n, const std::vector<Int>& T,
                             const E11Options& opt = {});

// H^degree of the cyclic group generated by gamma acting on the unit layer.
la::ModStruct e11_cohomology(const E11Presentation& pres, int degree);

}  // namespace zetalift::specseq
