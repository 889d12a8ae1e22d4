#include "zetalift/linalg.hpp"

#include <algorithm>

namespace zetalift::la {

long long pow_ll(long p, long e) {
  long long r = 1;
  for (long i = 0; i < e; ++i) {
    r *= p;
    if (r > (1LL << 30)) throw Error(Error::Kind::bad_input, "p^m too large for modular algebra");
  }
  return r;
}

MatI mat_mod(const MatI& A, long long pm) {
  MatI R = A;
  for (auto& v : R.a) v = ((v % pm) + pm) % pm;
  return R;
}

MatI matmul_mod(const MatI& A, const MatI& B, long long pm) {
  if (A.cols != B.rows) throw Error(Error::Kind::bad_input, "matmul: shape mismatch");
  MatI R(A.rows, B.cols);
  for (long i = 0; i < A.rows; ++i)
    for (long k = 0; k < A.cols; ++k) {
      long long av = ((A(i, k) % pm) + pm) % pm;
      if (av == 0) continue;
      for (long j = 0; j < B.cols; ++j)
        R(i, j) = (R(i, j) + av * (((B(k, j) % pm) + pm) % pm)) % pm;
    }
  return R;
}

VecI matvec_mod(const MatI& A, const VecI& x, long long pm) {
  if (static_cast<long>(x.size()) != A.cols)
    throw Error(Error::Kind::bad_input, "matvec: shape mismatch");
  VecI r(A.rows, 0);
  for (long i = 0; i < A.rows; ++i) {
    long long acc = 0;
    for (long j = 0; j < A.cols; ++j)
      acc = (acc + (((A(i, j) % pm) + pm) % pm) * (((x[j] % pm) + pm) % pm)) % pm;
    r[i] = acc;
  }
  return r;
}

MatZ matmul_z(const MatZ& A, const MatZ& B) {
  if (A.cols != B.rows) throw Error(Error::Kind::bad_input, "matmul: shape mismatch");
  MatZ R(A.rows, B.cols);
  for (long i = 0; i < A.rows; ++i)
    for (long k = 0; k < A.cols; ++k) {
      if (A(i, k) == 0) continue;
      for (long j = 0; j < B.cols; ++j)
        mpz_addmul(R(i, j).get_mpz_t(), A(i, k).get_mpz_t(), B(k, j).get_mpz_t());
    }
  return R;
}

MatI hconcat(const MatI& A, const MatI& B) {
  if (A.rows != B.rows) throw Error(Error::Kind::bad_input, "hconcat: row mismatch");
  MatI R(A.rows, A.cols + B.cols);
  for (long i = 0; i < A.rows; ++i) {
    for (long j = 0; j < A.cols; ++j) R(i, j) = A(i, j);
    for (long j = 0; j < B.cols; ++j) R(i, A.cols + j) = B(i, j);
  }
  return R;
}

namespace {

long val_p(long long v, long p, long m) {
  if (v == 0) return m;
  long a = 0;
  while (v % p == 0) {
    v /= p;
    ++a;
  }
  return std::min<long>(a, m);
}

long long inv_mod_ll(long long u, long long pm) {
  return to_long(invmod(Int(static_cast<long>(u)), Int(static_cast<long>(pm))));
}

}  // namespace

SnfModResult snf_mod(MatI M, long p, long m, bool want_U, bool want_V) {
  if (m < 1) throw Error(Error::Kind::bad_input, "snf_mod: m must be >= 1");
  long long pm = pow_ll(p, m);
  M = mat_mod(M, pm);
  long r = M.rows, c = M.cols;
  SnfModResult out;
  if (want_U) out.U = MatI::identity(r);
  if (want_V) out.V = MatI::identity(c);
  long dlen = std::min(r, c);
  out.diag_val.assign(dlen, m);

  auto row_swap = [&](long i, long j) {
    if (i == j) return;
    for (long k = 0; k < c; ++k) std::swap(M(i, k), M(j, k));
    if (want_U)
      for (long k = 0; k < r; ++k) std::swap(out.U(i, k), out.U(j, k));
  };
  auto col_swap = [&](long i, long j) {
    if (i == j) return;
    for (long k = 0; k < r; ++k) std::swap(M(k, i), M(k, j));
    if (want_V)
      for (long k = 0; k < c; ++k) std::swap(out.V(k, i), out.V(k, j));
  };
  auto row_scale = [&](long i, long long u) {
    for (long k = 0; k < c; ++k) M(i, k) = M(i, k) * u % pm;
    if (want_U)
      for (long k = 0; k < r; ++k) out.U(i, k) = out.U(i, k) * u % pm;
  };
  auto row_addmul = [&](long dst, long src, long long f) {  // row dst += f * row src
    f = ((f % pm) + pm) % pm;
    if (f == 0) return;
    for (long k = 0; k < c; ++k) M(dst, k) = (M(dst, k) + f * M(src, k)) % pm;
    if (want_U)
      for (long k = 0; k < r; ++k) out.U(dst, k) = (out.U(dst, k) + f * out.U(src, k)) % pm;
  };
  auto col_addmul = [&](long dst, long src, long long f) {
    f = ((f % pm) + pm) % pm;
    if (f == 0) return;
    for (long k = 0; k < r; ++k) M(k, dst) = (M(k, dst) + f * M(k, src)) % pm;
    if (want_V)
      for (long k = 0; k < c; ++k) out.V(k, dst) = (out.V(k, dst) + f * out.V(k, src)) % pm;
  };

  for (long k = 0; k < dlen; ++k) {
    long best = m;
    long bi = -1, bj = -1;
    for (long i = k; i < r; ++i)
      for (long j = k; j < c; ++j) {
        long v = val_p(M(i, j), p, m);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (best == 0) goto found;
        }
      }
  found:
    if (bi < 0) break;  // all remaining entries are 0 mod p^m
    row_swap(k, bi);
    col_swap(k, bj);
    long a = best;
    long long pa = pow_ll(p, a);
    // The pivot is p^a * unit with the unit coprime to p, hence invertible.
    row_scale(k, inv_mod_ll(M(k, k) / pa, pm));
    // Pivot is now exactly p^a; min-valuation choice makes every elimination exact.
    for (long i = k + 1; i < r; ++i)
      if (M(i, k) != 0) row_addmul(i, k, pm - M(i, k) / pa % pm);
    for (long j = k + 1; j < c; ++j)
      if (M(k, j) != 0) col_addmul(j, k, pm - M(k, j) / pa % pm);
    out.diag_val[k] = a;
  }
  out.D = M;
  return out;
}

MatI kernel_mod(const MatI& M, long p, long m) {
  long long pm = pow_ll(p, m);
  auto s = snf_mod(M, p, m, /*want_U=*/false, /*want_V=*/true);
  long c = M.cols;
  std::vector<long> gens;
  for (long j = 0; j < c; ++j) {
    long a = j < static_cast<long>(s.diag_val.size()) ? s.diag_val[j] : m;
    if (a > 0) gens.push_back(j);
  }
  MatI K(c, static_cast<long>(gens.size()));
  for (long t = 0; t < static_cast<long>(gens.size()); ++t) {
    long j = gens[t];
    long a = j < static_cast<long>(s.diag_val.size()) ? s.diag_val[j] : m;
    long long scale = pow_ll(p, m - a) % pm;
    for (long i = 0; i < c; ++i) K(i, t) = s.V(i, j) * scale % pm;
  }
  return K;
}

SolveMod solve_mod(const MatI& M, const VecI& b, long p, long m) {
  long long pm = pow_ll(p, m);
  auto s = snf_mod(M, p, m);
  VecI y = matvec_mod(s.U, b, pm);
  SolveMod res;
  VecI z(M.cols, 0);
  bool ok = true;
  for (long i = 0; i < M.rows; ++i) {
    long a = i < static_cast<long>(s.diag_val.size()) ? s.diag_val[i] : m;
    long long pa = pow_ll(p, a);
    if (y[i] % pa != 0) {
      ok = false;
      res.obstruction.emplace_back(i, y[i]);
      continue;
    }
    if (i < M.cols && a < m) z[i] = y[i] / pa % pm;
  }
  if (ok) res.x = matvec_mod(s.V, z, pm);
  return res;
}

std::optional<MatI> solve_mod_many(const MatI& M, const MatI& B, long p, long m) {
  if (M.rows != B.rows) throw Error(Error::Kind::bad_input, "solve_mod_many: shape mismatch");
  long long pm = pow_ll(p, m);
  auto s = snf_mod(M, p, m);
  MatI Y = matmul_mod(s.U, B, pm);
  MatI Z(M.cols, B.cols);
  for (long i = 0; i < M.rows; ++i) {
    long a = i < static_cast<long>(s.diag_val.size()) ? s.diag_val[i] : m;
    long long pa = pow_ll(p, a);
    for (long j = 0; j < B.cols; ++j) {
      if (Y(i, j) % pa != 0) return std::nullopt;
      if (i < M.cols && a < m) Z(i, j) = Y(i, j) / pa % pm;
    }
  }
  return matmul_mod(s.V, Z, pm);
}

ModStruct cokernel_mod(const MatI& M, long p, long m) {
  auto s = snf_mod(M, p, m, /*want_U=*/false, /*want_V=*/false);
  ModStruct st;
  for (long i = 0; i < M.rows; ++i) {
    long a = i < static_cast<long>(s.diag_val.size()) ? s.diag_val[i] : m;
    if (a > 0) st.cyclic_orders.push_back(pow_ll(p, a));
  }
  std::sort(st.cyclic_orders.begin(), st.cyclic_orders.end());
  return st;
}

ModStruct subquotient_mod(const MatI& num, const MatI& den, long p, long m) {
  if (num.rows != den.rows)
    throw Error(Error::Kind::bad_input, "subquotient: ambient rank mismatch");
  if (num.cols == 0) {
    if (den.cols != 0) {
      // den must be zero columns then
      for (auto v : den.a)
        if (v % pow_ll(p, m) != 0)
          throw Error(Error::Kind::bad_input, "subquotient: denominator outside numerator span");
    }
    return {};
  }
  auto X = solve_mod_many(num, den, p, m);
  if (!X)
    throw Error(Error::Kind::bad_input, "subquotient: denominator outside numerator span");
  MatI K = kernel_mod(num, p, m);
  return cokernel_mod(hconcat(*X, K), p, m);
}

SnfZResult snf_z(MatZ M) {
  long r = M.rows, c = M.cols;
  SnfZResult out;
  out.U = MatZ::identity(r);
  out.V = MatZ::identity(c);

  auto row_swap = [&](long i, long j) {
    if (i == j) return;
    for (long k = 0; k < c; ++k) std::swap(M(i, k), M(j, k));
    for (long k = 0; k < r; ++k) std::swap(out.U(i, k), out.U(j, k));
  };
  auto col_swap = [&](long i, long j) {
    if (i == j) return;
    for (long k = 0; k < r; ++k) std::swap(M(k, i), M(k, j));
    for (long k = 0; k < c; ++k) std::swap(out.V(k, i), out.V(k, j));
  };
  auto row_neg = [&](long i) {
    for (long k = 0; k < c; ++k) M(i, k) = -M(i, k);
    for (long k = 0; k < r; ++k) out.U(i, k) = -out.U(i, k);
  };
  auto row_addmul = [&](long dst, long src, const Int& f) {
    if (f == 0) return;
    for (long k = 0; k < c; ++k) mpz_addmul(M(dst, k).get_mpz_t(), f.get_mpz_t(), M(src, k).get_mpz_t());
    for (long k = 0; k < r; ++k) mpz_addmul(out.U(dst, k).get_mpz_t(), f.get_mpz_t(), out.U(src, k).get_mpz_t());
  };
  auto col_addmul = [&](long dst, long src, const Int& f) {
    if (f == 0) return;
    for (long k = 0; k < r; ++k) mpz_addmul(M(k, dst).get_mpz_t(), f.get_mpz_t(), M(k, src).get_mpz_t());
    for (long k = 0; k < c; ++k) mpz_addmul(out.V(k, dst).get_mpz_t(), f.get_mpz_t(), out.V(k, src).get_mpz_t());
  };

  long dlen = std::min(r, c);
  for (long k = 0; k < dlen; ++k) {
    while (true) {
      // min |nonzero| pivot in the trailing submatrix
      long bi = -1, bj = -1;
      for (long i = k; i < r; ++i)
        for (long j = k; j < c; ++j) {
          if (M(i, j) == 0) continue;
          if (bi < 0 || cmp(abs(M(i, j)), abs(M(bi, bj))) < 0) {
            bi = i;
            bj = j;
          }
        }
      if (bi < 0) { k = dlen; break; }  // all zero: done
      row_swap(k, bi);
      col_swap(k, bj);
      if (M(k, k) < 0) row_neg(k);
      Int piv = M(k, k);

      bool dirty = false;
      for (long i = k + 1; i < r; ++i) {
        if (M(i, k) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), M(i, k).get_mpz_t(), piv.get_mpz_t());
        row_addmul(i, k, -q);
        if (M(i, k) != 0) dirty = true;
      }
      for (long j = k + 1; j < c; ++j) {
        if (M(k, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), M(k, j).get_mpz_t(), piv.get_mpz_t());
        col_addmul(j, k, -q);
        if (M(k, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // row and column are clear; enforce divisibility of the rest
      bool fixed = true;
      for (long i = k + 1; i < r && fixed; ++i)
        for (long j = k + 1; j < c && fixed; ++j)
          if (M(i, j) % piv != 0) {
            row_addmul(k, i, Int(1));
            fixed = false;
          }
      if (fixed) break;
    }
    if (k >= dlen) break;
  }
  out.D = M;
  out.rank = 0;
  for (long i = 0; i < dlen; ++i)
    if (M(i, i) != 0) ++out.rank;
  return out;
}

}  // namespace zetalift::la
