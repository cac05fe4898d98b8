#pragma once

#include "frobhh/algebra.hpp"

namespace frobhh {

// Inverse of a unimodular integer matrix via its SNF (U M V = I => M^-1 = V U).
inline IntMat unimodular_inverse(const IntMat& M) {
  auto s = smith_decompose(M);
  for (const auto& d : s.divisors)
    if (d != 1) throw PairingDegenerate("matrix is not unimodular");
  if (s.rank() != M.rows || M.rows != M.cols)
    throw PairingDegenerate("matrix is not invertible");
  return s.V.mul(s.U);
}

// Trace functional, pairing, Nakayama automorphism and friends.
struct FrobeniusStructure {
  const Algebra* A = nullptr;
  std::vector<int> omega;               // basis index of omega_i per vertex
  std::vector<SparseVec> right_dual;    // f(b_m * right_dual[l]) = delta_{ml}
  std::vector<SparseVec> eta, eta_inv;  // Nakayama automorphism on basis elements
  bool symmetric = false;
  bool has_duals = false;
  std::vector<Rat> eta_sq_conjugator;   // u_i with eta^2(x) = u x u^{-1}

  Int f(const SparseVec& x) const {
    Int s = 0;
    if (A->kind == AlgebraKind::group_algebra) {
      auto it = x.find(A->unit[0]);
      return it == x.end() ? Int(0) : it->second;
    }
    for (int w : omega) {
      auto it = x.find(w);
      if (it != x.end()) s += it->second;
    }
    return s;
  }

  Int pair(int bx, int by) const { return f(A->mul_basis(bx, by)); }

  SparseVec apply(const std::vector<SparseVec>& table, const SparseVec& x) const {
    SparseVec r;
    for (const auto& [i, c] : x) sv_axpy(r, c, table[i]);
    return r;
  }

  // Casimir element sum_l b_l (x) b_l^dual of A (x)_R A, restricted to e_i (.)
  // Pairs (left basis index, right element) with matching middle vertex.
  std::vector<std::pair<int, SparseVec>> casimir_at(int i) const {
    std::vector<std::pair<int, SparseVec>> out;
    for (int b = 0; b < A->dim(); ++b)
      if (A->basis[b].head == i && !right_dual[b].empty()) out.emplace_back(b, right_dual[b]);
    return out;
  }
};

// Gram matrix of degree d against degree (top - d), full basis blocks.
inline IntMat gram_matrix(const Algebra& A, const FrobeniusStructure& F, int d) {
  const auto& rows = A.by_degree[d];
  const auto& cols = A.by_degree[A.top_degree - d];
  IntMat G(int(rows.size()), int(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) G.at(int(i), int(j)) = F.pair(rows[i], cols[j]);
  return G;
}

inline FrobeniusStructure frobenius_structure(const Algebra& A) {
  FrobeniusStructure F;
  F.A = &A;
  int t = A.top_degree;

  if (A.kind == AlgebraKind::group_algebra) {
    // f(g) = delta_{g,e}; eta = id; dual of g is g^{-1}
    F.symmetric = true;
    F.has_duals = true;
    F.omega = {A.unit[0]};
    F.eta.resize(A.dim());
    F.eta_inv.resize(A.dim());
    F.right_dual.resize(A.dim());
    for (int b = 0; b < A.dim(); ++b) {
      F.eta[b] = SparseVec{{b, 1}};
      F.eta_inv[b] = SparseVec{{b, 1}};
      for (int h = 0; h < A.dim(); ++h) {
        const SparseVec& p = A.mul_basis(b, h);
        if (p.size() == 1 && p.begin()->first == A.unit[0]) {
          F.right_dual[b] = SparseVec{{h, 1}};
          break;
        }
      }
      if (F.right_dual[b].empty()) throw PairingDegenerate("group element without inverse");
    }
    F.eta_sq_conjugator.assign(1, Rat(1));
    return F;
  }

  const auto& eta_bar = A.graph.eta_bar;
  // omega_i: the top block e_i A[t] e_{eta_bar(i)} must be free of rank one
  F.omega.assign(A.nv, -1);
  for (int i = 0; i < A.nv; ++i) {
    auto blk = A.block_basis(t, i, eta_bar[i]);
    if (A.kind == AlgebraKind::central_extension) blk = A.block_basis(t, i, i);
    if (blk.size() != 1)
      throw PairingDegenerate("top block at vertex " + std::to_string(i) +
                              " has rank " + std::to_string(blk.size()));
    F.omega[i] = blk[0];
  }
  // total top degree must be exactly these blocks
  if (int(A.by_degree[t].size()) != A.nv)
    throw PairingDegenerate("top degree is larger than the omega span");

  // pairing gates: G_d unimodular over Z (nondegenerate over Q for ring Q)
  bool unimodular = true;
  for (int d = 0; d <= t; ++d) {
    IntMat G = gram_matrix(A, F, d);
    if (G.rows != G.cols) throw PairingDegenerate("Gram block is not square");
    auto s = smith_decompose(G);
    if (s.rank() != G.rows)
      throw PairingDegenerate("Gram matrix degree " + std::to_string(d) + " is singular");
    for (const auto& dv : s.divisors)
      if (dv != 1) unimodular = false;
  }
  if (!unimodular) {
    if (A.ring.kind == Ring::Z || A.ring.kind == Ring::Fp)
      throw PairingDegenerate("pairing not unimodular over Z");
    F.has_duals = false;  // expected for central extensions over Q
  } else {
    F.has_duals = true;
  }

  // right duals: columns of G_d^{-1}
  F.right_dual.assign(A.dim(), {});
  if (F.has_duals) {
    for (int d = 0; d <= t; ++d) {
      const auto& rows = A.by_degree[d];
      const auto& cols = A.by_degree[t - d];
      IntMat Ginv = unimodular_inverse(gram_matrix(A, F, d));
      for (size_t l = 0; l < rows.size(); ++l) {
        SparseVec dual;
        for (size_t k = 0; k < cols.size(); ++k)
          if (Ginv.at(int(k), int(l)) != 0) dual.emplace(cols[k], Ginv.at(int(k), int(l)));
        F.right_dual[rows[l]] = std::move(dual);
      }
    }
  }

  // Nakayama automorphism: eta^{-1}(b) solves f(eta^{-1}(b) a) = f(a b).
  F.eta_inv.assign(A.dim(), {});
  F.eta.assign(A.dim(), {});
  for (int d = 0; d <= t; ++d) {
    const auto& blk = A.by_degree[d];
    const auto& tst = A.by_degree[t - d];
    // M[k][m] = f(b_k a_m), rhs per b: r[m] = f(a_m b)
    RatMat M(int(tst.size()), int(blk.size()));
    for (size_t k = 0; k < blk.size(); ++k)
      for (size_t m = 0; m < tst.size(); ++m)
        M.at(int(m), int(k)) = Rat(F.pair(blk[k], tst[m]));
    for (size_t bi = 0; bi < blk.size(); ++bi) {
      std::vector<Rat> rhs(tst.size()), y;
      for (size_t m = 0; m < tst.size(); ++m) rhs[m] = Rat(F.pair(tst[m], blk[bi]));
      if (!rat_solve(M, rhs, y)) throw PairingDegenerate("Nakayama solve failed");
      SparseVec img;
      for (size_t k = 0; k < blk.size(); ++k) {
        if (y[k] == 0) continue;
        if (denominator(y[k]) != 1) {
          if (A.ring.kind != Ring::Q)
            throw PairingDegenerate("Nakayama automorphism is not integral");
          // store cleared to a common denominator is not possible in Int
          // coefficients; central extensions are symmetric so this must not
          // happen there either
          throw PairingDegenerate("non-integral Nakayama coefficients");
        }
        img.emplace(blk[k], numerator(y[k]));
      }
      F.eta_inv[blk[bi]] = std::move(img);
    }
  }
  // eta from eta_inv by inverting each degree block
  for (int d = 0; d <= t; ++d) {
    const auto& blk = A.by_degree[d];
    IntMat M(int(blk.size()), int(blk.size()));
    std::map<int, int> pos;
    for (size_t i = 0; i < blk.size(); ++i) pos[blk[i]] = int(i);
    for (size_t j = 0; j < blk.size(); ++j)
      for (const auto& [i, c] : F.eta_inv[blk[j]]) M.at(pos.at(i), int(j)) = c;
    IntMat Minv = unimodular_inverse(M);
    for (size_t j = 0; j < blk.size(); ++j) {
      SparseVec img;
      for (size_t i = 0; i < blk.size(); ++i)
        if (Minv.at(int(i), int(j)) != 0) img.emplace(blk[i], Minv.at(int(i), int(j)));
      F.eta[blk[j]] = std::move(img);
    }
  }

  // checks: eta(e_i) = e_{eta_bar(i)}, automorphism on basis pairs
  for (int i = 0; i < A.nv; ++i) {
    SparseVec want{{A.unit[eta_bar[i]], 1}};
    if (A.kind == AlgebraKind::central_extension) want = SparseVec{{A.unit[i], 1}};
    if (F.eta[A.unit[i]] != want) throw PairingDegenerate("eta(e_i) != e_{eta_bar(i)}");
  }
  for (int x = 0; x < A.dim(); ++x)
    for (int y = 0; y < A.dim(); ++y) {
      if (A.basis[x].tail != A.basis[y].head) continue;
      if (A.basis[x].degree + A.basis[y].degree > t) continue;
      SparseVec lhs = F.apply(F.eta, A.mul_basis(x, y));
      SparseVec rhs = A.mul(F.eta[x], F.eta[y]);
      if (lhs != rhs) throw PairingDegenerate("eta is not an automorphism");
    }

  // symmetric iff eta acts as the identity
  F.symmetric = true;
  for (int b = 0; b < A.dim() && F.symmetric; ++b)
    if (!(F.eta[b].size() == 1 && F.eta[b].begin()->first == b &&
          F.eta[b].begin()->second == 1))
      F.symmetric = false;

  // eta^2 inner via a diagonal degree-0 unit: each block of eta^2 must be a
  // scalar lambda_{ij} = u_i / u_j; solve the multiplicative cocycle
  {
    std::map<std::pair<int, int>, Rat> lambda;
    for (int b = 0; b < A.dim(); ++b) {
      SparseVec e2 = F.apply(F.eta, F.eta[b]);
      if (e2.size() != 1 || e2.begin()->first != b)
        throw PairingDegenerate("eta^2 is not block-diagonal in the chosen basis");
      Rat lam = Rat(e2.begin()->second);
      auto key = std::make_pair(A.basis[b].head, A.basis[b].tail);
      auto it = lambda.find(key);
      if (it == lambda.end()) lambda[key] = lam;
      else if (it->second != lam)
        throw PairingDegenerate("eta^2 is not scalar on a vertex block");
    }
    F.eta_sq_conjugator.assign(A.nv, Rat(0));
    F.eta_sq_conjugator[0] = 1;
    // propagate along block-support graph
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [key, lam] : lambda) {
        auto [i, j] = key;
        if (F.eta_sq_conjugator[j] != 0 && F.eta_sq_conjugator[i] == 0) {
          F.eta_sq_conjugator[i] = lam * F.eta_sq_conjugator[j];
          changed = true;
        }
        if (F.eta_sq_conjugator[i] != 0 && F.eta_sq_conjugator[j] == 0) {
          F.eta_sq_conjugator[j] = F.eta_sq_conjugator[i] / lam;
          changed = true;
        }
      }
    }
    for (const auto& [key, lam] : lambda) {
      auto [i, j] = key;
      if (F.eta_sq_conjugator[i] == 0 || F.eta_sq_conjugator[j] == 0) continue;
      if (F.eta_sq_conjugator[i] / F.eta_sq_conjugator[j] != lam)
        throw PairingDegenerate("eta^2 is not inner by a diagonal unit");
    }
  }
  return F;
}

// eta maps each arrow to +-(single arrow) up to the diagonal ambiguity:
// checked as single-arrow support of eta on degree one.
inline bool eta_arrow_pattern_ok(const Algebra& A, const FrobeniusStructure& F) {
  if (A.kind != AlgebraKind::preprojective) return true;
  for (const auto& g : A.gens) {
    if (g.degree != 1 || g.basis_idx < 0) continue;
    if (F.eta[g.basis_idx].size() != 1) return false;
  }
  return true;
}

struct NormConorm {
  IntMat H;        // (H)_{ij} = dim e_i A e_j
  IntMat H_eta;    // traces of eta on blocks with both vertices fixed
  std::vector<int> fixed;  // eta_bar-fixed vertices indexing H_eta
  std::vector<Int> Kprime; // torsion of coker(conorm), prime powers
  std::vector<Int> Yprime; // torsion of coker(norm), prime powers
};

inline NormConorm norm_conorm(const Algebra& A, const FrobeniusStructure& F,
                              const HilbertMatrices& hm) {
  NormConorm out;
  int n = A.nv;
  out.H = IntMat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Int dim = 0;
      for (int d = 0; d < int(A.by_degree.size()); ++d)
        dim += Int(A.block_basis(d, i, j).size());
      out.H.at(i, j) = dim;
    }
  if (!(out.H == hm.H)) throw TraceMismatch("H_Q differs from the Hilbert matrix");

  const auto& eb = A.graph.eta_bar;
  for (int i = 0; i < n; ++i)
    if (eb[i] == i) out.fixed.push_back(i);
  out.H_eta = IntMat(int(out.fixed.size()), int(out.fixed.size()));
  for (size_t a = 0; a < out.fixed.size(); ++a)
    for (size_t b = 0; b < out.fixed.size(); ++b) {
      int i = out.fixed[a], j = out.fixed[b];
      Int tr = 0;
      for (int d = 0; d < int(A.by_degree.size()); ++d)
        for (int x : A.block_basis(d, i, j)) {
          auto it = F.eta[x].find(x);
          if (it != F.eta[x].end()) tr += it->second;
        }
      out.H_eta.at(int(a), int(b)) = tr;
    }

  // conorm d_0(e_i) = sum_j tr(Id|e_j A e_i) omega_j: cokernel = coker(H)
  out.Kprime = prime_power_split(smith_decompose(out.H).torsion());
  // norm d^{-1}(e_i) = sum_j [both fixed] tr(eta|e_i A e_j) omega_j
  out.Yprime = prime_power_split(smith_decompose(out.H_eta).torsion());
  return out;
}

}  // namespace frobhh
