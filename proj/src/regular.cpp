#include "zetalift/regular.hpp"

namespace zetalift::reg {

std::vector<Rat> bernoulli_upto(long max_index) {
  if (max_index < 0) throw Error(Error::Kind::bad_input, "bernoulli_upto: negative index");
  if (max_index > 2000) throw Error(Error::Kind::bad_input, "bernoulli_upto: index too large");
  std::vector<Rat> B(static_cast<size_t>(max_index) + 1);
  B[0] = 1;
  for (long m = 1; m <= max_index; ++m) {
    if (m > 2 && m % 2 == 1) {
      B[m] = 0;
      continue;
    }
    // sum_{j<=m} C(m+1, j) B_j = 0
    Rat acc = 0;
    for (long j = 0; j < m; ++j) {
      if (B[j] == 0) continue;
      Int binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m + 1),
                   static_cast<unsigned long>(j));
      acc += Rat(binom) * B[j];
    }
    B[m] = -acc / Rat(m + 1);
    B[m].canonicalize();
  }
  return B;
}

RegularityReport is_regular(long p) {
  check_odd_prime(p);
  if (p > 1000) throw Error(Error::Kind::bad_input, "is_regular: p too large");
  RegularityReport r;
  r.p = p;
  auto B = bernoulli_upto(p >= 3 ? p - 3 : 0);
  for (long k = 2; k <= p - 3; k += 2) {
    Int num = B[k].get_num();
    if (num % p == 0) r.irregular_indices.push_back(k);
  }
  r.regular = r.irregular_indices.empty();
  return r;
}

}  // namespace zetalift::reg
