#pragma once

#include "frobhh/basics.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>

namespace frobhh {

// Dense matrix over Z with arbitrary-precision entries.
struct IntMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}

  Int& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static IntMat identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMat zero(int r, int c) { return IntMat(r, c); }

  bool is_zero() const {
    for (const auto& x : a)
      if (x != 0) return false;
    return true;
  }

  bool operator==(const IntMat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }

  IntMat transpose() const {
    IntMat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  IntMat mul(const IntMat& o) const {
    assert(cols == o.rows);
    IntMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const Int& x = at(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.cols; ++j) {
          const Int& y = o.at(k, j);
          if (y != 0) r.at(i, j) += x * y;
        }
      }
    return r;
  }

  IntMat operator*(const IntMat& o) const { return mul(o); }

  IntMat operator+(const IntMat& o) const {
    assert(rows == o.rows && cols == o.cols);
    IntMat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
    return r;
  }

  IntMat operator-(const IntMat& o) const {
    assert(rows == o.rows && cols == o.cols);
    IntMat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
    return r;
  }

  IntMat scaled(const Int& c) const {
    IntMat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] * c;
    return r;
  }

  std::vector<Int> mul_vec(const std::vector<Int>& v) const {
    assert(int(v.size()) == cols);
    std::vector<Int> r(rows);
    for (int i = 0; i < rows; ++i) {
      Int s = 0;
      for (int j = 0; j < cols; ++j)
        if (at(i, j) != 0 && v[j] != 0) s += at(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }

  void set_col(int j, const std::vector<Int>& v) {
    assert(int(v.size()) == rows);
    for (int i = 0; i < rows; ++i) at(i, j) = v[i];
  }

  std::vector<Int> col(int j) const {
    std::vector<Int> v(rows);
    for (int i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
  }
};

inline std::ostream& operator<<(std::ostream& os, const IntMat& m) {
  os << "[";
  for (int i = 0; i < m.rows; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < m.cols; ++j) os << (j ? "," : "") << m.at(i, j);
    os << "]";
  }
  return os << "]";
}

// Rational matrices: only used in small structure solves (Nakayama, conjugators).
struct RatMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;
  RatMat() = default;
  RatMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
  Rat& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[size_t(i) * cols + j]; }
  static RatMat from(const IntMat& m) {
    RatMat r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = Rat(m.a[i]);
    return r;
  }
};

// Solve M x = b over Q by Gaussian elimination; returns false if inconsistent.
inline bool rat_solve(RatMat M, std::vector<Rat> b, std::vector<Rat>& x) {
  int n = M.rows, m = M.cols;
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < m && r < n; ++c) {
    int pr = -1;
    for (int i = r; i < n; ++i)
      if (M.at(i, c) != 0) { pr = i; break; }
    if (pr < 0) continue;
    for (int j = 0; j < m; ++j) std::swap(M.at(r, j), M.at(pr, j));
    std::swap(b[r], b[pr]);
    Rat inv = M.at(r, c);
    for (int i = 0; i < n; ++i) {
      if (i == r || M.at(i, c) == 0) continue;
      Rat f = M.at(i, c) / inv;
      for (int j = c; j < m; ++j) M.at(i, j) -= f * M.at(r, j);
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < n; ++i)
    if (b[i] != 0) return false;
  x.assign(m, Rat(0));
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = b[i] / M.at(i, pivot_col[i]);
  return true;
}

// Rank over Q of an integer matrix (fraction-free elimination).
inline int rank_over_q(IntMat M) {
  int r = 0;
  for (int c = 0; c < M.cols && r < M.rows; ++c) {
    int pr = -1;
    for (int i = r; i < M.rows; ++i)
      if (M.at(i, c) != 0) { pr = i; break; }
    if (pr < 0) continue;
    for (int j = 0; j < M.cols; ++j) std::swap(M.at(r, j), M.at(pr, j));
    for (int i = r + 1; i < M.rows; ++i) {
      if (M.at(i, c) == 0) continue;
      Int g = gcd(M.at(i, c), M.at(r, c));
      Int fr = M.at(r, c) / g, fi = M.at(i, c) / g;
      for (int j = c; j < M.cols; ++j) M.at(i, j) = M.at(i, j) * fr - M.at(r, j) * fi;
    }
    ++r;
  }
  return r;
}

}  // namespace frobhh
