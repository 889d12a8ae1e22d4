#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zetalift/base.hpp"

// Exact matrix algebra: Smith normal form over Z (arbitrary precision) and
// over the local ring Z/p^m, with the derived kernel / solve / cokernel /
// subquotient operations used by the cohomology engines. Matrices are dense
// row-major; module elements are column vectors.
namespace zetalift::la {

template <typename T>
struct Mat {
  long rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, T(0)) {}
  static Mat identity(long n) {
    Mat I(n, n);
    for (long i = 0; i < n; ++i) I(i, i) = T(1);
    return I;
  }
  T& operator()(long r, long c) { return a[static_cast<size_t>(r) * cols + c]; }
  const T& operator()(long r, long c) const { return a[static_cast<size_t>(r) * cols + c]; }
  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

using MatI = Mat<long long>;
using MatZ = Mat<Int>;
using VecI = std::vector<long long>;

MatI matmul_mod(const MatI& A, const MatI& B, long long pm);
VecI matvec_mod(const MatI& A, const VecI& x, long long pm);
MatI mat_mod(const MatI& A, long long pm);
MatZ matmul_z(const MatZ& A, const MatZ& B);
// columns of B appended to A (same row count)
MatI hconcat(const MatI& A, const MatI& B);

long long pow_ll(long p, long e);

// --- Smith normal form over Z/p^m ---------------------------------------

struct SnfModResult {
  MatI U, D, V;                // U*M*V = D mod p^m, U and V invertible
  std::vector<long> diag_val;  // D(i,i) = p^diag_val[i], ascending; m encodes 0
};

// want_U / want_V skip transform tracking (the skipped matrix is left empty);
// kernels only need V and cokernel structure needs neither.
SnfModResult snf_mod(MatI M, long p, long m, bool want_U = true, bool want_V = true);

// Generators of ker(M : (Z/p^m)^cols -> (Z/p^m)^rows), as matrix columns.
MatI kernel_mod(const MatI& M, long p, long m);

struct SolveMod {
  std::optional<VecI> x;
  // rows of U*b (cokernel coordinates) that fail divisibility, with values
  std::vector<std::pair<long, long long>> obstruction;
};

SolveMod solve_mod(const MatI& M, const VecI& b, long p, long m);

// Solves M*X = B for all columns of B with a single SNF; nullopt when any
// column has no solution.
std::optional<MatI> solve_mod_many(const MatI& M, const MatI& B, long p, long m);

// Isomorphism class of a finite abelian p-group: cyclic orders > 1, ascending.
struct ModStruct {
  std::vector<long long> cyclic_orders;
  Int order() const {
    Int r = 1;
    for (auto c : cyclic_orders) r *= static_cast<long>(c);
    return r;
  }
  bool trivial() const { return cyclic_orders.empty(); }
  bool operator==(const ModStruct& o) const { return cyclic_orders == o.cyclic_orders; }
};

// Structure of (Z/p^m)^rows / column-span(M).
ModStruct cokernel_mod(const MatI& M, long p, long m);

// Structure of span(num)/span(den) inside (Z/p^m)^g; den must lie in span(num).
ModStruct subquotient_mod(const MatI& num, const MatI& den, long p, long m);

// --- Smith normal form over Z --------------------------------------------

struct SnfZResult {
  MatZ U, D, V;  // U*M*V = D, U and V unimodular, diagonal >= 0 with d1 | d2 | ...
  long rank = 0;
};

SnfZResult snf_z(MatZ M);

}  // namespace zetalift::la
