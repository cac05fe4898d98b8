#pragma once

#include "frobhh/fpmat.hpp"
#include "frobhh/smith.hpp"

#include <optional>
#include <sstream>

namespace frobhh {

// (free rank, multiset of torsion orders > 1); over a field torsion is empty
// and free_rank is the dimension.
struct GroupShape {
  int free_rank = 0;
  std::vector<Int> torsion;  // elementary divisors > 1, in divisibility order

  bool operator==(const GroupShape& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string str() const {
    std::ostringstream os;
    os << "Z^" << free_rank;
    for (const auto& t : torsion) os << " + Z/" << t;
    return os.str();
  }
};

// Splits torsion into prime powers so reports are basis-independent.
inline std::vector<Int> prime_power_split(const std::vector<Int>& tors) {
  std::vector<Int> out;
  for (Int t : tors) {
    for (Int p = 2; p * p <= t; ++p) {
      if (t % p != 0) continue;
      Int q = 1;
      while (t % p == 0) { q *= p; t /= p; }
      out.push_back(q);
    }
    if (t > 1) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct GradedAbelianGroupReport {
  std::string label;
  // strictly increasing internal degrees
  std::vector<std::pair<int, GroupShape>> entries;

  void set(int degree, GroupShape g) {
    if (g.trivial()) return;
    g.torsion = prime_power_split(g.torsion);
    entries.emplace_back(degree, std::move(g));
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  GroupShape get(int degree) const {
    for (const auto& [d, g] : entries)
      if (d == degree) return g;
    return {};
  }
  bool operator==(const GradedAbelianGroupReport& o) const { return entries == o.entries; }
  std::string str() const {
    std::ostringstream os;
    os << label << ": ";
    if (entries.empty()) os << "0";
    for (const auto& [d, g] : entries) os << "[" << d << "] " << g.str() << "  ";
    return os.str();
  }
  GradedAbelianGroupReport shifted(int s) const {
    GradedAbelianGroupReport r;
    r.label = label;
    for (const auto& [d, g] : entries) r.entries.emplace_back(d + s, g);
    return r;
  }
  int total_rank() const {
    int n = 0;
    for (const auto& [d, g] : entries) n += g.free_rank;
    return n;
  }
  std::vector<std::pair<int, Int>> torsion_list() const {
    std::vector<std::pair<int, Int>> t;
    for (const auto& [d, g] : entries)
      for (const auto& x : g.torsion) t.emplace_back(d, x);
    return t;
  }
};

// --- homology of a two-step complex  X --d_in--> Y --d_out--> Z ---

inline void check_complex(const IntMat& d_in, const IntMat& d_out) {
  if (d_in.cols == 0 || d_out.rows == 0) return;
  if (!d_out.mul(d_in).is_zero()) throw NotAComplex("d_out * d_in != 0");
}

// ker(d_out)/im(d_in) over Z.
inline GroupShape homology_report_z(const IntMat& d_in, const IntMat& d_out) {
  check_complex(d_in, d_out);
  int n = d_out.cols;  // dim Y
  IntMat K = kernel_basis(d_out);
  // express im(d_in) in kernel coordinates: K * E = d_in
  SmithDecomposition sk = smith_decompose(K);
  IntMat E(K.cols, d_in.cols);
  for (int j = 0; j < d_in.cols; ++j) {
    std::vector<Int> x;
    if (!snf_solve(sk, d_in.col(j), x))
      throw NotAComplex("image not inside kernel");
    E.set_col(j, x);
  }
  (void)n;
  SmithDecomposition se = smith_decompose(E);
  GroupShape g;
  g.free_rank = K.cols - se.rank();
  g.torsion = se.torsion();
  return g;
}

inline GroupShape homology_report_fp(const IntMat& d_in, const IntMat& d_out, std::int64_t p) {
  check_complex(d_in, d_out);
  FpMat fin = FpMat::from(d_in, p), fout = FpMat::from(d_out, p);
  int k = d_out.cols - fp_rank(fout);
  GroupShape g;
  g.free_rank = k - fp_rank(fin);
  return g;
}

inline GroupShape homology_report_q(const IntMat& d_in, const IntMat& d_out) {
  check_complex(d_in, d_out);
  GroupShape g;
  g.free_rank = d_out.cols - rank_over_q(d_out) - rank_over_q(d_in);
  return g;
}

inline GroupShape homology_report(const IntMat& d_in, const IntMat& d_out, Ring ring) {
  switch (ring.kind) {
    case Ring::Z: return homology_report_z(d_in, d_out);
    case Ring::Q: return homology_report_q(d_in, d_out);
    default: return homology_report_fp(d_in, d_out, ring.p);
  }
}

// --- split exactness ---

struct SlotCertificate {
  int slot = 0;
  int internal_degree = 0;
  GroupShape homology;
  std::vector<Int> divisors;  // elementary divisors of the outgoing map
  bool split = true;
  bool exact = true;
};

// Window of composable maps d[0], d[1], ... where d[i+1] followed by d[i]
// composes to zero (d[i]: C_{i+1} -> C_i).  Interior slots are 1..k-1.
struct SplitExactness {
  bool ok = true;
  std::vector<SlotCertificate> slots;
};

inline SplitExactness split_exactness_check(const std::vector<IntMat>& d) {
  SplitExactness res;
  for (size_t i = 0; i + 1 < d.size(); ++i) {
    check_complex(d[i + 1], d[i]);
    SlotCertificate c;
    c.slot = int(i) + 1;
    c.homology = homology_report_z(d[i + 1], d[i]);
    SmithDecomposition s = smith_decompose(d[i + 1]);
    for (const auto& dv : s.divisors) c.divisors.push_back(dv);
    c.exact = c.homology.trivial();
    c.split = true;
    for (const auto& dv : c.divisors)
      if (dv != 1) c.split = false;
    if (!c.exact || !c.split) res.ok = false;
    res.slots.push_back(std::move(c));
  }
  return res;
}

// --- homology with coordinates (class arithmetic) ---

// Z lane: coordinates of cycles in homology = (free part, torsion part).
struct HomologySlotZ {
  int dimY = 0;
  IntMat K;                  // kernel basis (dimY x k)
  SmithDecomposition snf_K;  // to express cycles in kernel coordinates
  SmithDecomposition snf_E;  // SNF of image-in-kernel-coords
  int k = 0, r = 0;
  std::vector<int> free_rows;     // rows of U_E giving free coordinates
  std::vector<int> torsion_rows;  // rows with divisor > 1
  std::vector<Int> torsion_div;
  IntMat P;  // representative cycles of the free generators, as columns

  GroupShape shape() const {
    GroupShape g;
    g.free_rank = int(free_rows.size());
    g.torsion = torsion_div;
    return g;
  }

  // coordinates of a cycle: free part, then torsion part (reduced)
  void coords(const std::vector<Int>& cycle, std::vector<Int>& free_c,
              std::vector<Int>& tor_c) const {
    std::vector<Int> w;
    if (!snf_solve(snf_K, cycle, w)) throw NotAComplex("vector is not a cycle");
    std::vector<Int> uw = snf_E.U.mul_vec(w);
    free_c.clear();
    tor_c.clear();
    for (int i : free_rows) free_c.push_back(uw[i]);
    for (size_t t = 0; t < torsion_rows.size(); ++t) {
      Int m = uw[torsion_rows[t]] % torsion_div[t];
      if (m < 0) m += torsion_div[t];
      tor_c.push_back(m);
    }
  }

  bool is_boundary(const std::vector<Int>& cycle) const {
    std::vector<Int> f, t;
    coords(cycle, f, t);
    for (const auto& x : f)
      if (x != 0) return false;
    for (const auto& x : t)
      if (x != 0) return false;
    return true;
  }

  // representative cycle of the j-th free generator
  std::vector<Int> rep(int j) const { return P.col(j); }
};

inline HomologySlotZ make_homology_slot_z(const IntMat& d_in, const IntMat& d_out) {
  check_complex(d_in, d_out);
  HomologySlotZ h;
  h.dimY = d_out.cols;
  h.K = kernel_basis(d_out);
  h.k = h.K.cols;
  h.snf_K = smith_decompose(h.K);
  IntMat E(h.k, d_in.cols);
  for (int j = 0; j < d_in.cols; ++j) {
    std::vector<Int> x;
    if (!snf_solve(h.snf_K, d_in.col(j), x)) throw NotAComplex("image not inside kernel");
    E.set_col(j, x);
  }
  h.snf_E = smith_decompose(E);
  h.r = h.snf_E.rank();
  for (int i = 0; i < h.k; ++i) {
    if (i < h.r) {
      if (h.snf_E.D.at(i, i) > 1) {
        h.torsion_rows.push_back(i);
        h.torsion_div.push_back(h.snf_E.D.at(i, i));
      }
    } else {
      h.free_rows.push_back(i);
    }
  }
  // U_E^{-1} from the SNF of the unimodular U_E: U' U V' = I  =>  U^{-1} = V' U'
  if (!h.free_rows.empty()) {
    SmithDecomposition su = smith_decompose(h.snf_E.U);
    IntMat Uinv = su.V.mul(su.U);
    IntMat W(h.k, int(h.free_rows.size()));
    for (size_t j = 0; j < h.free_rows.size(); ++j)
      W.set_col(int(j), Uinv.col(h.free_rows[j]));
    h.P = h.K.mul(W);
  } else {
    h.P = IntMat(h.dimY, 0);
  }
  return h;
}

// Fp lane.
struct HomologySlotFp {
  std::int64_t p = 2;
  int dimY = 0;
  FpMat K;      // kernel basis
  FpMat Ksolve; // row-reduced [K | I] data: store K and solve on demand
  FpMat Q;      // quotient projector data: rows = homology coords
  int dim = 0;
  // We store a matrix R (dim x k) with: coords(cycle) = R * (K-coords of cycle),
  // and representatives as columns of P (dimY x dim).
  FpMat R;
  FpMat P;

  GroupShape shape() const { return GroupShape{dim, {}}; }

  std::vector<std::int64_t> coords(const std::vector<std::int64_t>& cycle) const {
    std::vector<std::int64_t> w;
    if (!fp_solve(K, cycle, w)) throw NotAComplex("vector is not a cycle (mod p)");
    return fp_mul_vec(R, w);
  }
  bool is_boundary(const std::vector<std::int64_t>& cycle) const {
    for (auto x : coords(cycle))
      if (x % p != 0) return false;
    return true;
  }
  std::vector<std::int64_t> rep(int j) const {
    std::vector<std::int64_t> r(P.rows);
    for (int i = 0; i < P.rows; ++i) r[i] = P.at(i, j);
    return r;
  }
};

inline HomologySlotFp make_homology_slot_fp(const IntMat& d_in, const IntMat& d_out,
                                            std::int64_t p) {
  check_complex(d_in, d_out);
  HomologySlotFp h;
  h.p = p;
  h.dimY = d_out.cols;
  h.K = fp_kernel(FpMat::from(d_out, p));
  int k = h.K.cols;
  // image of d_in in kernel coordinates
  FpMat E(k, d_in.cols, p);
  for (int j = 0; j < d_in.cols; ++j) {
    std::vector<std::int64_t> b(d_in.rows), x;
    for (int i = 0; i < d_in.rows; ++i) b[i] = FpMat::red(d_in.at(i, j), p);
    if (!fp_solve(h.K, b, x)) throw NotAComplex("image not inside kernel (mod p)");
    for (int i = 0; i < k; ++i) E.at(i, j) = x[i];
  }
  // quotient of F_p^k by col(E): complement of pivot rows of RREF(E^T)
  FpMat Et(E.cols, E.rows, p);
  for (int i = 0; i < E.rows; ++i)
    for (int j = 0; j < E.cols; ++j) Et.at(j, i) = E.at(i, j);
  std::vector<int> piv = fp_rref(Et);
  std::vector<char> is_piv(k, 0);
  for (int c : piv) is_piv[c] = 1;
  h.dim = k - int(piv.size());
  // coords: for a kernel-coords vector w, reduce by the row space of Et:
  // subtract pivot-row multiples, read off non-pivot coordinates.
  h.R = FpMat(h.dim, k, p);
  {
    int row = 0;
    for (int c = 0; c < k; ++c) {
      if (is_piv[c]) continue;
      // e_c minus corrections from RREF rows: coordinate function
      h.R.at(row, c) = 1;
      for (size_t i = 0; i < piv.size(); ++i) {
        std::int64_t v = Et.at(int(i), c);
        if (v != 0) {
          // w_{piv[i]} contributes -v * ... : fold pivot coordinate into others
          // coordinate functional: phi_c(w) = w_c - sum_i Et[i][c] * w_piv[i]
          h.R.at(row, piv[i]) = (p - v) % p;
        }
      }
      ++row;
    }
  }
  h.P = FpMat(h.dimY, h.dim, p);
  {
    int col = 0;
    for (int c = 0; c < k; ++c) {
      if (is_piv[c]) continue;
      for (int i = 0; i < h.dimY; ++i) h.P.at(i, col) = h.K.at(i, c);
      ++col;
    }
  }
  return h;
}

// Universal-coefficient cross-check for chain complexes:
//   dim_Fp H_i(C (x) Fp) = rank H_i + #p-torsion(H_i) + #p-torsion(H_{i+shift})
// shift = -1 for chain (lower index), +1 for cochain complexes.
inline bool uct_consistent(const GroupShape& hz_here, const GroupShape& hz_adj,
                           const GroupShape& hp, std::int64_t p) {
  auto count_p = [&](const GroupShape& g) {
    int n = 0;
    for (const auto& t : g.torsion)
      if (t % p == 0) ++n;
    return n;
  };
  return hp.free_rank == hz_here.free_rank + count_p(hz_here) + count_p(hz_adj);
}

}  // namespace frobhh
