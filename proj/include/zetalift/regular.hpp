#pragma once

#include <vector>

#include "zetalift/base.hpp"

// Bernoulli numbers (exact rationals) and the regularity test used to gate
// the unit-module constructions: an odd prime p is regular when it divides
// no numerator of B_k for even k <= p-3.
namespace zetalift::reg {

// B_0 .. B_max, exact. Odd indices >= 3 are zero.
std::vector<Rat> bernoulli_upto(long max_index);

struct RegularityReport {
  long p = 0;
  bool regular = false;
  std::vector<long> irregular_indices;  // even k <= p-3 with p | numerator(B_k)
};

RegularityReport is_regular(long p);

}  // namespace zetalift::reg
