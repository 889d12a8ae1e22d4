#include <doctest.h>

#include <random>

#include "zetalift/linalg.hpp"

using namespace zetalift;
using namespace zetalift::la;

namespace {

Int det_z(const MatZ& M) {
  REQUIRE(M.rows == M.cols);
  long n = M.rows;
  if (n == 0) return 1;
  if (n == 1) return M(0, 0);
  Int acc = 0;
  for (long j = 0; j < n; ++j) {
    if (M(0, j) == 0) continue;
    MatZ sub(n - 1, n - 1);
    for (long i = 1; i < n; ++i) {
      long cc = 0;
      for (long k = 0; k < n; ++k)
        if (k != j) sub(i - 1, cc++) = M(i, k);
    }
    Int term = M(0, j) * det_z(sub);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

MatI rnd_mat(std::mt19937_64& rng, long r, long c, long long pm) {
  MatI M(r, c);
  for (auto& v : M.a) v = static_cast<long long>(rng() % pm);
  return M;
}

bool invertible_mod(const MatI& A, long p, long m) {
  // square A invertible over Z/p^m iff its cokernel is trivial
  return cokernel_mod(A, p, m).trivial();
}

}  // namespace

TEST_CASE("snf over Z/p^m: shapes and frozen case") {
  // [[2,4],[6,8]] over Z/8: invariant factors 2 and 4
  MatI M(2, 2);
  M(0, 0) = 2; M(0, 1) = 4; M(1, 0) = 6; M(1, 1) = 8;
  auto s = snf_mod(M, 2, 3);
  CHECK(s.diag_val == std::vector<long>{1, 2});
  CHECK(s.D(0, 0) == 2);
  CHECK(s.D(1, 1) == 4);
  CHECK(s.D(0, 1) == 0);
  CHECK(s.D(1, 0) == 0);
  auto ck = cokernel_mod(M, 2, 3);
  CHECK(ck.cyclic_orders == std::vector<long long>{2, 4});
  CHECK(ck.order() == 8);

  MatI D2(2, 2);
  D2(0, 0) = 5; D2(1, 1) = 1;
  auto s2 = snf_mod(D2, 5, 2);
  CHECK(s2.diag_val == std::vector<long>{0, 1});  // unit pivot first
}

TEST_CASE("snf over Z/p^m: U M V = D on random matrices") {
  std::mt19937_64 rng(2024);
  for (auto [p, m] : std::vector<std::pair<long, long>>{{3, 3}, {2, 2}, {5, 1}, {7, 2}}) {
    long long pm = pow_ll(p, m);
    for (int t = 0; t < 20; ++t) {
      long r = 1 + static_cast<long>(rng() % 5), c = 1 + static_cast<long>(rng() % 5);
      MatI M = rnd_mat(rng, r, c, pm);
      auto s = snf_mod(M, p, m);
      CHECK(matmul_mod(matmul_mod(s.U, M, pm), s.V, pm) == mat_mod(s.D, pm));
      CHECK(invertible_mod(s.U, p, m));
      CHECK(invertible_mod(s.V, p, m));
      for (size_t i = 1; i < s.diag_val.size(); ++i) CHECK(s.diag_val[i - 1] <= s.diag_val[i]);
    }
  }
}

TEST_CASE("kernel over Z/p^m") {
  long p = 3, m = 2;
  long long pm = 9;
  MatI M(2, 3);
  M(0, 0) = 1; M(0, 1) = 0; M(0, 2) = 3;
  M(1, 0) = 0; M(1, 1) = 3; M(1, 2) = 0;
  MatI K = kernel_mod(M, p, m);
  // every kernel column is annihilated
  for (long j = 0; j < K.cols; ++j) {
    VecI x(K.rows);
    for (long i = 0; i < K.rows; ++i) x[i] = K(i, j);
    VecI y = matvec_mod(M, x, pm);
    for (auto v : y) CHECK(v == 0);
  }
  // kernel order: solutions of x0 + 3x2 = 0, 3x1 = 0 in (Z/9)^3: x2 free (9),
  // x0 = -3x2 (1), x1 in {0,3,6} (3): 27 total

  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    MatI A = rnd_mat(rng, 3, 4, pm);
    MatI KK = kernel_mod(A, p, m);
    for (long j = 0; j < KK.cols; ++j) {
      VecI x(KK.rows);
      for (long i = 0; i < KK.rows; ++i) x[i] = KK(i, j);
      for (auto v : matvec_mod(A, x, pm)) CHECK(v == 0);
    }
  }
}

TEST_CASE("solve over Z/p^m") {
  long p = 5, m = 2;
  long long pm = 25;
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    MatI A = rnd_mat(rng, 3, 3, pm);
    VecI x(3);
    for (auto& v : x) v = static_cast<long long>(rng() % pm);
    VecI b = matvec_mod(A, x, pm);
    auto sol = solve_mod(A, b, p, m);
    REQUIRE(sol.x.has_value());
    CHECK(matvec_mod(A, *sol.x, pm) == b);
    CHECK(sol.obstruction.empty());
  }

  MatI P(1, 1);
  P(0, 0) = 5;
  auto bad = solve_mod(P, {1}, p, m);
  CHECK(!bad.x.has_value());
  REQUIRE(bad.obstruction.size() == 1);
  CHECK(bad.obstruction[0].first == 0);
  CHECK(bad.obstruction[0].second == 1);
  auto good = solve_mod(P, {10}, p, m);
  REQUIRE(good.x.has_value());
  CHECK((*good.x)[0] * 5 % 25 == 10);
}

TEST_CASE("cokernel structures") {
  // (Z/27)^2 / <(3,0)> = Z/3 + Z/27
  MatI M(2, 1);
  M(0, 0) = 3; M(1, 0) = 0;
  CHECK(cokernel_mod(M, 3, 3).cyclic_orders == std::vector<long long>{3, 27});
  // full-rank unit matrix: trivial cokernel
  CHECK(cokernel_mod(MatI::identity(3), 3, 3).trivial());
  // zero columns: everything survives
  MatI Z(2, 0);
  CHECK(cokernel_mod(Z, 3, 2).cyclic_orders == std::vector<long long>{9, 9});
}

TEST_CASE("subquotients") {
  long p = 5, m = 2;
  // (Z/25)^2 / <(5,0)>: orders 5 and 25
  MatI num = MatI::identity(2);
  MatI den(2, 1);
  den(0, 0) = 5; den(1, 0) = 0;
  CHECK(subquotient_mod(num, den, p, m).cyclic_orders == std::vector<long long>{5, 25});

  // span{e1, 5 e2} / span{5 e1}: Z/5 + Z/5
  MatI num2(2, 2);
  num2(0, 0) = 1; num2(1, 1) = 5;
  MatI den2(2, 1);
  den2(0, 0) = 5;
  CHECK(subquotient_mod(num2, den2, p, m).cyclic_orders == std::vector<long long>{5, 5});

  // denominator outside the span
  MatI den3(2, 1);
  den3(1, 0) = 1;
  CHECK_THROWS_AS(subquotient_mod(num2, den3, p, m), Error);

  // trivial quotient: num/num
  CHECK(subquotient_mod(num2, num2, p, m).trivial());
}

TEST_CASE("snf over Z: frozen example") {
  MatZ M(2, 2);
  M(0, 0) = 2; M(0, 1) = 4; M(1, 0) = 6; M(1, 1) = 8;
  auto s = snf_z(M);
  CHECK(s.rank == 2);
  CHECK(s.D(0, 0) == 2);
  CHECK(s.D(1, 1) == 4);
  CHECK(s.D(0, 1) == 0);
  CHECK(s.D(1, 0) == 0);
  CHECK(matmul_z(matmul_z(s.U, M), s.V) == s.D);
  CHECK(abs(det_z(s.U)) == 1);
  CHECK(abs(det_z(s.V)) == 1);
}

TEST_CASE("snf over Z: random properties") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 25; ++t) {
    long r = 1 + static_cast<long>(rng() % 4), c = 1 + static_cast<long>(rng() % 4);
    MatZ M(r, c);
    for (auto& v : M.a) v = static_cast<long>(rng() % 41) - 20;
    auto s = snf_z(M);
    CHECK(matmul_z(matmul_z(s.U, M), s.V) == s.D);
    CHECK(abs(det_z(s.U)) == 1);
    CHECK(abs(det_z(s.V)) == 1);
    for (long i = 0; i < std::min(r, c); ++i) {
      CHECK(s.D(i, i) >= 0);
      if (i > 0 && s.D(i, i) != 0) {
        CHECK(s.D(i - 1, i - 1) != 0);
        CHECK(s.D(i, i) % s.D(i - 1, i - 1) == 0);
      }
    }
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < c; ++j)
        if (i != j) CHECK(s.D(i, j) == 0);
  }

  MatZ Z(2, 3);
  auto sz = snf_z(Z);
  CHECK(sz.rank == 0);

  MatZ row(1, 2);
  row(0, 0) = 4; row(0, 1) = 6;
  CHECK(snf_z(row).D(0, 0) == 2);
}
