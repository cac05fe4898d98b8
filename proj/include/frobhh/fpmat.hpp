#pragma once

#include "frobhh/intmat.hpp"

#include <cstdint>

namespace frobhh {

// Dense matrix over F_p (p < 2^31), reduced representatives in [0, p).
struct FpMat {
  std::int64_t p = 2;
  int rows = 0, cols = 0;
  std::vector<std::int64_t> a;

  FpMat() = default;
  FpMat(int r, int c, std::int64_t prime) : p(prime), rows(r), cols(c), a(size_t(r) * c, 0) {}

  std::int64_t& at(int i, int j) { return a[size_t(i) * cols + j]; }
  std::int64_t at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static std::int64_t red(const Int& x, std::int64_t p) {
    Int m = x % p;
    if (m < 0) m += p;
    return m.convert_to<std::int64_t>();
  }

  static FpMat from(const IntMat& m, std::int64_t p) {
    FpMat f(m.rows, m.cols, p);
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) f.at(i, j) = red(m.at(i, j), p);
    return f;
  }

  static FpMat identity(int n, std::int64_t p) {
    FpMat f(n, n, p);
    for (int i = 0; i < n; ++i) f.at(i, i) = 1;
    return f;
  }
};

inline std::int64_t fp_inv(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
    tmp = r - q * nr; r = nr; nr = tmp;
  }
  if (t < 0) t += p;
  return t;
}

// Row-reduce in place; returns pivot column indices.
inline std::vector<int> fp_rref(FpMat& M) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < M.cols && r < M.rows; ++c) {
    int pr = -1;
    for (int i = r; i < M.rows; ++i)
      if (M.at(i, c) != 0) { pr = i; break; }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < M.cols; ++j) std::swap(M.at(r, j), M.at(pr, j));
    std::int64_t inv = fp_inv(M.at(r, c), M.p);
    for (int j = c; j < M.cols; ++j) M.at(r, j) = (__int128(M.at(r, j)) * inv) % M.p;
    for (int i = 0; i < M.rows; ++i) {
      if (i == r || M.at(i, c) == 0) continue;
      std::int64_t f = M.at(i, c);
      for (int j = c; j < M.cols; ++j) {
        __int128 v = M.at(i, j) - __int128(f) * M.at(r, j) % M.p;
        std::int64_t w = std::int64_t(v % M.p);
        if (w < 0) w += M.p;
        M.at(i, j) = w;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int fp_rank(FpMat M) { return int(fp_rref(M).size()); }

// Kernel basis as columns of a cols x k matrix.
inline FpMat fp_kernel(FpMat M) {
  std::vector<int> piv = fp_rref(M);
  std::vector<char> is_piv(M.cols, 0);
  for (int c : piv) is_piv[c] = 1;
  int k = M.cols - int(piv.size());
  FpMat K(M.cols, k, M.p);
  int col = 0;
  for (int c = 0; c < M.cols; ++c) {
    if (is_piv[c]) continue;
    K.at(c, col) = 1;
    for (size_t i = 0; i < piv.size(); ++i) {
      std::int64_t v = M.at(int(i), c);
      if (v != 0) K.at(piv[i], col) = M.p - v;
    }
    ++col;
  }
  return K;
}

// Solve M x = b mod p; false if inconsistent. Canonical solution with free
// coordinates set to zero.
inline bool fp_solve(const FpMat& M, const std::vector<std::int64_t>& b,
                     std::vector<std::int64_t>& x) {
  FpMat W(M.rows, M.cols + 1, M.p);
  for (int i = 0; i < M.rows; ++i) {
    for (int j = 0; j < M.cols; ++j) W.at(i, j) = M.at(i, j);
    W.at(i, M.cols) = b[i] % M.p;
    if (W.at(i, M.cols) < 0) W.at(i, M.cols) += M.p;
  }
  std::vector<int> piv = fp_rref(W);
  if (!piv.empty() && piv.back() == M.cols) return false;
  x.assign(M.cols, 0);
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = W.at(int(i), M.cols);
  return true;
}

inline FpMat fp_mul(const FpMat& A, const FpMat& B) {
  FpMat R(A.rows, B.cols, A.p);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      std::int64_t x = A.at(i, k);
      if (!x) continue;
      for (int j = 0; j < B.cols; ++j) {
        if (!B.at(k, j)) continue;
        R.at(i, j) = std::int64_t((R.at(i, j) + __int128(x) * B.at(k, j)) % A.p);
      }
    }
  return R;
}

inline std::vector<std::int64_t> fp_mul_vec(const FpMat& A, const std::vector<std::int64_t>& v) {
  std::vector<std::int64_t> r(A.rows, 0);
  for (int i = 0; i < A.rows; ++i) {
    __int128 s = 0;
    for (int j = 0; j < A.cols; ++j) s += __int128(A.at(i, j)) * (v[j] % A.p);
    r[i] = std::int64_t(s % A.p);
    if (r[i] < 0) r[i] += A.p;
  }
  return r;
}

}  // namespace frobhh
