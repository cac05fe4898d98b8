#pragma once

#include "frobhh/bicomplex.hpp"

namespace frobhh {

// Hom_{A^e}(P_k, A) and A (x)_{A^e} P_k blocks in a fixed internal degree.
//
// Cochains: phi is determined by phi(m) in e_{i_m} A e_{j_m}; internal degree
// d means deg phi(m) = deg(m) + d.  Chains: classes v (x) m with
// v in e_{j_m} A e_{i_m}, internal degree deg(v) + deg(m).
struct HomBlock {
  std::vector<std::pair<int, int>> basis;  // (generator index, algebra basis elt)
  std::map<std::pair<int, int>, int> index;
  int dim() const { return int(basis.size()); }
};

inline const HomBlock& cochain_block(const BimodComplex& C, int k, int d,
                                     std::map<std::tuple<int, int>, HomBlock>& cache) {
  auto key = std::make_tuple(k, d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  HomBlock blk;
  const auto& gs = C.gens(k);
  for (size_t gi = 0; gi < gs.size(); ++gi) {
    int vd = gs[gi].degree + d;
    if (vd < 0 || vd >= int(C.A->by_degree.size())) continue;
    for (int v : C.A->block_basis(vd, gs[gi].head, gs[gi].tail))
      blk.basis.emplace_back(int(gi), v);
  }
  for (size_t i = 0; i < blk.basis.size(); ++i) blk.index[blk.basis[i]] = int(i);
  return cache.emplace(key, std::move(blk)).first->second;
}

inline const HomBlock& chain_block(const BimodComplex& C, int k, int d,
                                   std::map<std::tuple<int, int>, HomBlock>& cache) {
  auto key = std::make_tuple(k, d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  HomBlock blk;
  const auto& gs = C.gens(k);
  for (size_t gi = 0; gi < gs.size(); ++gi) {
    int vd = d - gs[gi].degree;
    if (vd < 0 || vd >= int(C.A->by_degree.size())) continue;
    for (int v : C.A->block_basis(vd, gs[gi].tail, gs[gi].head))
      blk.basis.emplace_back(int(gi), v);
  }
  for (size_t i = 0; i < blk.basis.size(); ++i) blk.index[blk.basis[i]] = int(i);
  return cache.emplace(key, std::move(blk)).first->second;
}

// Both complexes of a fixed algebra, with block/matrix caches and homology
// slots over the ring of the algebra.
class HHComputer {
 public:
  const BimodComplex* C = nullptr;
  Ring ring = Ring::z();

  explicit HHComputer(const BimodComplex& c) : C(&c), ring(c.A->ring) {}

  const HomBlock& coch(int k, int d) const { return cochain_block(*C, k, d, coch_cache_); }
  const HomBlock& chn(int k, int d) const { return chain_block(*C, k, d, chn_cache_); }

  // delta^k : C^k[d] -> C^{k+1}[d],  (delta phi)(m') = phi(d_{k+1} m')
  const IntMat& delta(int k, int d) const {
    auto key = std::make_tuple(k, d);
    auto it = delta_cache_.find(key);
    if (it != delta_cache_.end()) return it->second;
    const Algebra& A = *C->A;
    const HomBlock& src = coch(k, d);
    const HomBlock& dst = coch(k + 1, d);
    const auto& table = C->diff(k + 1);
    IntMat M(dst.dim(), src.dim());
    for (int j = 0; j < src.dim(); ++j) {
      auto [n, v] = src.basis[j];
      // contribution to phi(d(m')) for every generator m' of P_{k+1}
      for (size_t mi = 0; mi < table.size(); ++mi) {
        for (const auto& tr : table[mi]) {
          if (tr.n != n) continue;
          SparseVec lv = (tr.a < 0) ? SparseVec{{v, Int(1)}} : A.mul_basis(tr.a, v);
          for (const auto& [x, cx] : lv) {
            SparseVec xv = (tr.b < 0) ? SparseVec{{x, Int(1)}} : A.mul_basis(x, tr.b);
            for (const auto& [y, cy] : xv) {
              auto pos = dst.index.find({int(mi), y});
              if (pos == dst.index.end()) throw NotAComplex("cochain image outside block");
              M.at(pos->second, j) += tr.c * cx * cy;
            }
          }
        }
      }
    }
    return delta_cache_.emplace(key, std::move(M)).first->second;
  }

  // boundary_k : C_k[d] -> C_{k-1}[d],  v (x) m -> sum c (b v a) (x) n
  const IntMat& boundary(int k, int d) const {
    auto key = std::make_tuple(k, d);
    auto it = bnd_cache_.find(key);
    if (it != bnd_cache_.end()) return it->second;
    const Algebra& A = *C->A;
    const HomBlock& src = chn(k, d);
    const HomBlock& dst = chn(k - 1, d);
    const auto& table = C->diff(k);
    IntMat M(dst.dim(), src.dim());
    for (int j = 0; j < src.dim(); ++j) {
      auto [m, v] = src.basis[j];
      for (const auto& tr : table[m]) {
        SparseVec bv = (tr.b < 0) ? SparseVec{{v, Int(1)}} : A.mul_basis(tr.b, v);
        for (const auto& [x, cx] : bv) {
          SparseVec xa = (tr.a < 0) ? SparseVec{{x, Int(1)}} : A.mul_basis(x, tr.a);
          for (const auto& [y, cy] : xa) {
            auto pos = dst.index.find({tr.n, y});
            if (pos == dst.index.end()) throw NotAComplex("chain image outside block");
            M.at(pos->second, j) += tr.c * cx * cy;
          }
        }
      }
    }
    return bnd_cache_.emplace(key, std::move(M)).first->second;
  }

  // homology slots (coordinates + reports)
  const HomologySlotZ& coh_slot_z(int i, int d, bool stable = true) const {
    auto key = std::make_tuple(i, d, stable);
    auto it = cohz_.find(key);
    if (it != cohz_.end()) return it->second;
    IntMat din = stable ? delta(i - 1, d) : IntMat::zero(coch(i, d).dim(), 0);
    if (!stable && i > 0) din = delta(i - 1, d);
    return cohz_.emplace(key, make_homology_slot_z(din, delta(i, d))).first->second;
  }
  const HomologySlotZ& hom_slot_z(int i, int d, bool stable = true) const {
    auto key = std::make_tuple(i, d, stable);
    auto it = homz_.find(key);
    if (it != homz_.end()) return it->second;
    IntMat din = stable ? boundary(i + 1, d) : IntMat::zero(chn(i, d).dim(), 0);
    if (!stable && i > 0) din = boundary(i + 1, d);
    return homz_.emplace(key, make_homology_slot_z(din, boundary(i, d))).first->second;
  }
  const HomologySlotFp& coh_slot_fp(int i, int d, bool stable = true) const {
    auto key = std::make_tuple(i, d, stable);
    auto it = cohp_.find(key);
    if (it != cohp_.end()) return it->second;
    IntMat din = (stable || i > 0) ? delta(i - 1, d) : IntMat::zero(coch(i, d).dim(), 0);
    return cohp_.emplace(key, make_homology_slot_fp(din, delta(i, d), ring.p)).first->second;
  }
  const HomologySlotFp& hom_slot_fp(int i, int d, bool stable = true) const {
    auto key = std::make_tuple(i, d, stable);
    auto it = homp_.find(key);
    if (it != homp_.end()) return it->second;
    IntMat din = (stable || i > 0) ? boundary(i + 1, d) : IntMat::zero(chn(i, d).dim(), 0);
    return homp_.emplace(key, make_homology_slot_fp(din, boundary(i, d), ring.p)).first->second;
  }

  GroupShape group(bool cohomology, int i, int d, bool stable = true) const {
    switch (ring.kind) {
      case Ring::Z:
        return cohomology ? coh_slot_z(i, d, stable).shape() : hom_slot_z(i, d, stable).shape();
      case Ring::Q: {
        GroupShape g =
            cohomology ? coh_slot_z(i, d, stable).shape() : hom_slot_z(i, d, stable).shape();
        g.torsion.clear();
        return g;
      }
      default:
        return cohomology ? coh_slot_fp(i, d, stable).shape() : hom_slot_fp(i, d, stable).shape();
    }
  }

  GradedAbelianGroupReport report(bool cohomology, int i, int dlo, int dhi,
                                  bool stable = true) const {
    GradedAbelianGroupReport rep;
    rep.label = (cohomology ? "HH^" : "HH_") + std::to_string(i);
    for (int d = dlo; d <= dhi; ++d) {
      GroupShape g = group(cohomology, i, d, stable);
      if (!g.trivial()) rep.set(d, g);
    }
    return rep;
  }

 private:
  mutable std::map<std::tuple<int, int>, HomBlock> coch_cache_, chn_cache_;
  mutable std::map<std::tuple<int, int>, IntMat> delta_cache_, bnd_cache_;
  mutable std::map<std::tuple<int, int, bool>, HomologySlotZ> cohz_, homz_;
  mutable std::map<std::tuple<int, int, bool>, HomologySlotFp> cohp_, homp_;
};

}  // namespace frobhh
