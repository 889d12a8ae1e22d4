#include <doctest.h>

#include "zetalift/regular.hpp"

using namespace zetalift;
using namespace zetalift::reg;

TEST_CASE("Bernoulli numbers, exact values") {
  auto B = bernoulli_upto(12);
  CHECK(B[0] == Rat(1));
  CHECK(B[1] == Rat(-1, 2));
  CHECK(B[2] == Rat(1, 6));
  CHECK(B[3] == Rat(0));
  CHECK(B[4] == Rat(-1, 30));
  CHECK(B[10] == Rat(5, 66));
  CHECK(B[12] == Rat(-691, 2730));
}

TEST_CASE("von Staudt-Clausen denominators") {
  // Independent oracle: denom(B_2k) = product of primes q with (q-1) | 2k.
  auto B = bernoulli_upto(60);
  for (long k = 2; k <= 60; k += 2) {
    Int d = 1;
    for (long q = 2; q <= k + 1; ++q) {
      if (!is_prime(Int(q))) continue;
      if (k % (q - 1) == 0) d *= q;
    }
    CHECK(B[k].get_den() == d);
  }
}

TEST_CASE("regular primes") {
  for (long p : {3L, 5L, 7L, 11L, 13L, 23L, 31L}) {
    auto r = is_regular(p);
    CHECK(r.regular);
    CHECK(r.irregular_indices.empty());
  }
}

TEST_CASE("irregular primes and their indices") {
  auto r37 = is_regular(37);
  CHECK(!r37.regular);
  CHECK(r37.irregular_indices == std::vector<long>{32});

  CHECK(is_regular(59).irregular_indices == std::vector<long>{44});
  CHECK(is_regular(67).irregular_indices == std::vector<long>{58});
  CHECK(is_regular(101).irregular_indices == std::vector<long>{68});
  CHECK(is_regular(103).irregular_indices == std::vector<long>{24});
  // 157 is the smallest prime of irregularity index 2.
  CHECK(is_regular(157).irregular_indices == std::vector<long>{62, 110});
}

TEST_CASE("regularity input contract") {
  CHECK_THROWS_AS(is_regular(2), Error);
  CHECK_THROWS_AS(is_regular(9), Error);
  CHECK_THROWS_AS(is_regular(-5), Error);
}
