#pragma once

#include "frobhh/intmat.hpp"

namespace frobhh {

// U * M * V = D with U, V unimodular, D diagonal with d_1 | d_2 | ...
struct SmithDecomposition {
  IntMat U, V, D;
  int orig_rows = 0, orig_cols = 0;
  std::vector<Int> divisors;  // nonzero diagonal entries, in chain order

  int rank() const { return int(divisors.size()); }

  std::vector<Int> torsion() const {
    std::vector<Int> t;
    for (const auto& d : divisors)
      if (d > 1) t.push_back(d);
    return t;
  }
};

namespace detail {

inline void snf_row_swap(IntMat& D, IntMat& U, int i, int j) {
  if (i == j) return;
  for (int c = 0; c < D.cols; ++c) std::swap(D.at(i, c), D.at(j, c));
  for (int c = 0; c < U.cols; ++c) std::swap(U.at(i, c), U.at(j, c));
}

inline void snf_col_swap(IntMat& D, IntMat& V, int i, int j) {
  if (i == j) return;
  for (int r = 0; r < D.rows; ++r) std::swap(D.at(r, i), D.at(r, j));
  for (int r = 0; r < V.rows; ++r) std::swap(V.at(r, i), V.at(r, j));
}

inline void snf_row_addmul(IntMat& D, IntMat& U, int dst, int src, const Int& q) {
  if (q == 0) return;
  for (int c = 0; c < D.cols; ++c) D.at(dst, c) += q * D.at(src, c);
  for (int c = 0; c < U.cols; ++c) U.at(dst, c) += q * U.at(src, c);
}

inline void snf_col_addmul(IntMat& D, IntMat& V, int dst, int src, const Int& q) {
  if (q == 0) return;
  for (int r = 0; r < D.rows; ++r) D.at(r, dst) += q * D.at(r, src);
  for (int r = 0; r < V.rows; ++r) V.at(r, dst) += q * V.at(r, src);
}

}  // namespace detail

// Smith normal form, minimal-absolute-value pivoting.
inline SmithDecomposition smith_decompose(const IntMat& M) {
  SmithDecomposition s;
  s.orig_rows = M.rows;
  s.orig_cols = M.cols;
  s.D = M;
  s.U = IntMat::identity(M.rows);
  s.V = IntMat::identity(M.cols);
  IntMat& D = s.D;
  IntMat& U = s.U;
  IntMat& V = s.V;

  int n = std::min(M.rows, M.cols);
  for (int t = 0; t < n; ++t) {
    // find minimal-|.| nonzero pivot in the trailing block
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < D.rows; ++i)
      for (int j = t; j < D.cols; ++j) {
        const Int& x = D.at(i, j);
        if (x == 0) continue;
        Int ax = abs(x);
        if (pi < 0 || ax < best) {
          best = ax;
          pi = i;
          pj = j;
          if (best == 1) goto found;
        }
      }
    if (pi < 0) break;  // all zero
  found:
    detail::snf_row_swap(D, U, t, pi);
    detail::snf_col_swap(D, V, t, pj);

    for (;;) {
      bool clean = true;
      // clear column t below the pivot
      for (int i = t + 1; i < D.rows; ++i) {
        if (D.at(i, t) == 0) continue;
        Int q = D.at(i, t) / D.at(t, t);
        detail::snf_row_addmul(D, U, i, t, -q);
        if (D.at(i, t) != 0) {
          detail::snf_row_swap(D, U, t, i);  // remainder strictly smaller
          clean = false;
        }
      }
      // clear row t right of the pivot
      for (int j = t + 1; j < D.cols; ++j) {
        if (D.at(t, j) == 0) continue;
        Int q = D.at(t, j) / D.at(t, t);
        detail::snf_col_addmul(D, V, j, t, -q);
        if (D.at(t, j) != 0) {
          detail::snf_col_swap(D, V, t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // enforce divisibility of the trailing block by the pivot
      bool fixed = false;
      for (int i = t + 1; i < D.rows && !fixed; ++i)
        for (int j = t + 1; j < D.cols && !fixed; ++j)
          if (D.at(i, j) % D.at(t, t) != 0) {
            detail::snf_row_addmul(D, U, t, i, Int(1));
            fixed = true;
          }
      if (!fixed) break;
    }
    if (D.at(t, t) < 0) {
      for (int c = 0; c < D.cols; ++c) D.at(t, c) = -D.at(t, c);
      for (int c = 0; c < U.cols; ++c) U.at(t, c) = -U.at(t, c);
    }
  }
  for (int t = 0; t < n; ++t)
    if (D.at(t, t) != 0) s.divisors.push_back(D.at(t, t));
  return s;
}

// Basis of the integer kernel lattice of M (saturated sublattice of Z^cols),
// returned as the columns of a cols x k matrix.
inline IntMat kernel_basis(const SmithDecomposition& s) {
  int r = s.rank();
  int k = s.orig_cols - r;
  IntMat K(s.orig_cols, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < s.orig_cols; ++i) K.at(i, j) = s.V.at(i, r + j);
  return K;
}

inline IntMat kernel_basis(const IntMat& M) { return kernel_basis(smith_decompose(M)); }

// Solve M x = b over Z using a precomputed SNF.  Returns false when no
// integral solution exists. The solution returned is the canonical one
// (x = V D^+ U b), deterministic for a fixed decomposition.
inline bool snf_solve(const SmithDecomposition& s, const std::vector<Int>& b,
                      std::vector<Int>& x) {
  std::vector<Int> ub = s.U.mul_vec(b);
  int r = s.rank();
  for (int i = r; i < s.orig_rows; ++i)
    if (ub[i] != 0) return false;
  std::vector<Int> y(s.orig_cols, 0);
  for (int i = 0; i < r; ++i) {
    if (ub[i] % s.D.at(i, i) != 0) return false;
    y[i] = ub[i] / s.D.at(i, i);
  }
  x = s.V.mul_vec(y);
  return true;
}

// Solve M x = b over Q (x rational multiples cleared: returns x integral and
// a positive denominator den so that M (x/den) = b).  False if inconsistent.
inline bool snf_solve_q(const SmithDecomposition& s, const std::vector<Int>& b,
                        std::vector<Int>& x, Int& den) {
  std::vector<Int> ub = s.U.mul_vec(b);
  int r = s.rank();
  for (int i = r; i < s.orig_rows; ++i)
    if (ub[i] != 0) return false;
  den = 1;
  for (int i = 0; i < r; ++i) den = lcm(den, s.D.at(i, i));
  std::vector<Int> y(s.orig_cols, 0);
  for (int i = 0; i < r; ++i) y[i] = ub[i] * (den / s.D.at(i, i));
  x = s.V.mul_vec(y);
  Int g = den;
  for (const auto& v : x) g = gcd(g, v);
  if (g > 1) {
    for (auto& v : x) v /= g;
    den /= g;
  }
  return true;
}

}  // namespace frobhh
