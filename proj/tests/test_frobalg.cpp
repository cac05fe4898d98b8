#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobhh/frobstructure.hpp"

using namespace frobhh;

static Algebra prep(const std::string& spec, Ring r = Ring::z()) {
  return construct_preprojective(parse_quiver_spec(spec), r);
}

TEST_CASE("preprojective dimensions") {
  auto a2 = prep("A2");
  CHECK(a2.by_degree[0].size() == 2);
  CHECK(a2.by_degree[1].size() == 2);
  CHECK(a2.dim() == 4);

  auto a1 = prep("A1");
  CHECK(a1.dim() == 1);
  CHECK(a1.top_degree == 0);

  auto d4 = prep("D4");
  CHECK(d4.dim() == 28);
  CHECK(d4.top_degree == 4);

  auto e6 = prep("E6");
  CHECK(e6.dim() == 156);
}

TEST_CASE("associativity on basis triples") {
  for (auto spec : {"A2", "A3", "D4"}) {
    auto A = prep(spec);
    CAPTURE(spec);
    for (int x = 0; x < A.dim(); ++x)
      for (int y = 0; y < A.dim(); ++y) {
        if (A.basis[x].tail != A.basis[y].head) continue;
        for (int z = 0; z < A.dim(); ++z) {
          if (A.basis[y].tail != A.basis[z].head) continue;
          SparseVec xy = A.mul_basis(x, y);
          SparseVec yz = A.mul_basis(y, z);
          SparseVec lhs = A.mul(xy, SparseVec{{z, 1}});
          SparseVec rhs = A.mul(SparseVec{{x, 1}}, yz);
          REQUIRE(lhs == rhs);
        }
      }
  }
}

TEST_CASE("frobenius structure of preprojective algebras") {
  auto a2 = prep("A2");
  auto F = frobenius_structure(a2);
  CHECK(F.has_duals);
  // eta exchanges the vertices
  CHECK(F.eta[a2.unit[0]] == SparseVec{{a2.unit[1], 1}});
  CHECK(F.eta[a2.unit[1]] == SparseVec{{a2.unit[0], 1}});
  CHECK(eta_arrow_pattern_ok(a2, F));
  // G_0 is a permutation matrix
  IntMat G0 = gram_matrix(a2, F, 0);
  for (int i = 0; i < 2; ++i) {
    Int row = 0, col = 0;
    for (int j = 0; j < 2; ++j) {
      row += abs(G0.at(i, j));
      col += abs(G0.at(j, i));
    }
    CHECK(row == 1);
    CHECK(col == 1);
  }

  auto d4 = prep("D4");
  auto Fd = frobenius_structure(d4);
  CHECK(eta_arrow_pattern_ok(d4, Fd));
  // (a, b) = (eta^{-1}(b), a) on all pairs
  for (int x = 0; x < d4.dim(); ++x)
    for (int y = 0; y < d4.dim(); ++y) {
      Int lhs = Fd.pair(x, y);
      Int rhs = Fd.f(d4.mul(Fd.eta_inv[y], SparseVec{{x, 1}}));
      REQUIRE(lhs == rhs);
    }
}

TEST_CASE("casimir twist: a xi = xi eta(a)") {
  for (auto spec : {"A2", "A3", "D4"}) {
    auto A = prep(spec);
    auto F = frobenius_structure(A);
    CAPTURE(spec);
    // elements of A (x)_R A as (left basis, right basis) -> coeff
    using Tensor = std::map<std::pair<int, int>, Int>;
    auto add = [](Tensor& t, int l, int r, const Int& c) {
      if (c == 0) return;
      auto& v = t[{l, r}];
      v += c;
      if (v == 0) t.erase({l, r});
    };
    for (const auto& g : A.gens) {
      if (g.basis_idx < 0) continue;
      Tensor lhs, rhs;
      for (int b = 0; b < A.dim(); ++b) {
        if (F.right_dual[b].empty()) continue;
        // a * b_l (x) dual_l
        const SparseVec& ab = A.mul_basis(g.basis_idx, b);
        for (const auto& [l, c] : ab)
          for (const auto& [r, cr] : F.right_dual[b]) add(lhs, l, r, c * cr);
        // b_l (x) dual_l * eta(a)
        SparseVec de = A.mul(F.right_dual[b], F.eta[g.basis_idx]);
        for (const auto& [r, cr] : de) add(rhs, b, r, cr);
      }
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("torsion tables T (graded commutator quotients)") {
  // A_n: T = 0
  for (auto spec : {"A2", "A3", "A4"}) {
    auto A = prep(spec);
    auto inv = graded_invariants(A);
    CAPTURE(spec);
    for (const auto& [d, g] : inv.commutator_quotient.entries) {
      if (d == 0) {
        CHECK(g.free_rank == A.nv);
        CHECK(g.torsion.empty());
      } else {
        CHECK(g.trivial());
      }
    }
  }
  // D4: T = Z/2 in degree 4
  auto d4 = prep("D4");
  auto inv = graded_invariants(d4);
  CHECK(inv.commutator_quotient.get(0) == GroupShape{4, {}});
  CHECK(inv.commutator_quotient.get(4) == GroupShape{0, {Int(2)}});
  for (const auto& [d, g] : inv.commutator_quotient.entries)
    CHECK((d == 0 || d == 4));

  // HH^0 pattern: center has rank 1 in degree 0 and rank |I^eta| in top degree
  auto c = inv.center;
  CHECK(c.get(0).free_rank == 1);
  CHECK(c.get(4).free_rank == 4);  // L = Z^{I^{eta_bar}}, all fixed for D4
}

TEST_CASE("K' and Y' from norm/conorm") {
  // Expected values are cross-validated against the stable cohomology of the
  // period-6 resolution (torsion of HH^0[h-2] and HH_{-1}[0]) over Z and by
  // mod-p dimension counts; see test_stablehh for the resolution route.
  struct Want {
    const char* spec;
    std::vector<Int> kp, yp;
  };
  std::vector<Want> wants = {
      {"A2", {}, {}},
      {"A3", {}, {2}},
      {"A4", {}, {}},
      {"D4", {2, 2}, {3}},
      {"D5", {2, 2}, {2}},
      {"D6", {2, 2, 2, 2}, {5}},
      {"E6", {2, 2}, {}},
  };
  for (const auto& w : wants) {
    auto A = prep(w.spec);
    auto F = frobenius_structure(A);
    auto hm = hilbert_matrices(A.graph);
    auto nc = norm_conorm(A, F, hm);
    CAPTURE(w.spec);
    CHECK(nc.Kprime == w.kp);
    CHECK(nc.Yprime == w.yp);
  }
}

TEST_CASE("center lemma: center over F_p equals center over Z reduced") {
  for (auto spec : {"A2", "A3", "A4", "A5", "D4", "D5"}) {
    auto A = prep(spec);
    auto cz = center_report(A);
    for (std::int64_t p : {2, 3, 5}) {
      Algebra Ap = A;
      Ap.ring = Ring::fp(p);
      CAPTURE(spec);
      CAPTURE(p);
      // center over F_p per degree: kernel mod p of the same commutation maps
      // (recomputed by the same routine with Fp semantics would need a mod-p
      // kernel; compare ranks by checking the Z-kernel saturation instead)
      // Direct check: the commutation matrix has the same rank mod p as over Q.
      int maxd = int(A.by_degree.size()) - 1;
      for (int d = 0; d <= maxd; ++d) {
        std::vector<int> cols;
        for (int b : A.by_degree[d])
          if (A.basis[b].head == A.basis[b].tail) cols.push_back(b);
        if (cols.empty()) continue;
        std::map<int, int> colpos;
        for (size_t c = 0; c < cols.size(); ++c) colpos[cols[c]] = int(c);
        std::vector<std::map<int, Int>> rows;  // dense assembly below
        std::vector<IntMat> mats;
        std::map<int, std::map<int, Int>> rowmap;
        int nextrow = 0;
        std::map<std::pair<int, int>, int> rowidx;
        std::vector<std::vector<Int>> data;
        for (const auto& g : A.gens) {
          if (g.basis_idx < 0) continue;
          int tb = g.basis_idx;
          for (size_t c = 0; c < cols.size(); ++c) {
            SparseVec comm = A.mul_basis(cols[c], tb);
            const SparseVec& tx = A.mul_basis(tb, cols[c]);
            for (const auto& [i, v] : tx) sv_add(comm, i, -v);
            for (const auto& [i, v] : comm) {
              auto key = std::make_pair(int(&g - &A.gens[0]), i);
              auto it = rowidx.find(key);
              if (it == rowidx.end()) {
                rowidx[key] = nextrow++;
                data.emplace_back(cols.size(), Int(0));
                it = rowidx.find(key);
              }
              data[it->second][c] += v;
            }
          }
        }
        IntMat M(nextrow, int(cols.size()));
        for (int r = 0; r < nextrow; ++r)
          for (size_t c = 0; c < cols.size(); ++c) M.at(r, int(c)) = data[r][c];
        int dim_z = int(cols.size()) - rank_over_q(M);
        int dim_p = int(cols.size()) - fp_rank(FpMat::from(M, p));
        CHECK(dim_z == dim_p);
        (void)cz;
      }
    }
  }
}

TEST_CASE("orientation independence of invariant reports") {
  auto g = parse_quiver_spec("D4");
  auto base = construct_preprojective(g, Ring::z());
  auto inv0 = graded_invariants(base);
  // flip one edge orientation
  DynkinGraph flipped = g;
  std::swap(flipped.arrows[1].first, flipped.arrows[1].second);
  auto A1 = construct_preprojective(flipped, Ring::z());
  auto inv1 = graded_invariants(A1);
  CHECK(inv0.commutator_quotient.entries == inv1.commutator_quotient.entries);
  CHECK(inv0.center.entries == inv1.center.entries);
  auto F1 = frobenius_structure(A1);
  auto nc1 = norm_conorm(A1, F1, hilbert_matrices(flipped));
  auto F0 = frobenius_structure(base);
  auto nc0 = norm_conorm(base, F0, hilbert_matrices(g));
  CHECK(nc0.Kprime == nc1.Kprime);
  CHECK(nc0.Yprime == nc1.Yprime);
}

TEST_CASE("group algebras") {
  auto c2 = group_algebra_builtin("C2", Ring::z());
  CHECK(c2.dim() == 2);
  auto F = frobenius_structure(c2);
  CHECK(F.symmetric);
  CHECK(F.right_dual[1] == SparseVec{{1, 1}});

  auto q8 = group_algebra_builtin("Q8", Ring::z());
  CHECK(q8.dim() == 8);
  auto Fq = frobenius_structure(q8);
  CHECK(Fq.symmetric);

  auto s3 = group_algebra_builtin("S3", Ring::q());
  CHECK(s3.dim() == 6);
  auto inv = graded_invariants(s3);
  CHECK(inv.center.get(0).free_rank == 3);  // three conjugacy classes

  CHECK_THROWS_AS(construct_group_algebra({{0, 1}, {1, 1}}, Ring::z()), NotAGroup);
}

TEST_CASE("central extension at A2") {
  auto g = parse_quiver_spec("A2");
  auto A = construct_central_extension(g, WeightVector{{1, 1}});
  // the regular-weight relation kills all degree-3 monomials at rank two, so
  // the algebra closes at degree 2 with dims (2, 2, 2)
  CHECK(A.top_degree == 2);
  CHECK(A.dim() == 6);
  auto F = frobenius_structure(A);
  CHECK(F.symmetric);

  CHECK_THROWS_AS(construct_central_extension(g, WeightVector{{1, -1}}), IrregularWeight);

  // A1 with mu=(1): relation z*mu = 0 forces z = 0, algebra = Q
  auto a1 = construct_central_extension(parse_quiver_spec("A1"), WeightVector{{1}});
  CHECK(a1.dim() == 1);
}

TEST_CASE("extended preprojective truncation and projection") {
  auto gt = parse_quiver_spec("D4~");
  auto ext = construct_preprojective(gt, Ring::z(), 6);
  CHECK(ext.truncated);
  CHECK(!ext.by_degree[6].empty());
  auto dyn = prep("D4");
  auto img = extended_projection(ext, dyn);
  // the projection is an algebra map on a sample of products
  for (int x = 0; x < ext.dim(); x += 7)
    for (int y = 0; y < ext.dim(); y += 5) {
      if (ext.basis[x].tail != ext.basis[y].head) continue;
      if (ext.basis[x].degree + ext.basis[y].degree >= int(ext.by_degree.size())) continue;
      SparseVec lhs;
      for (const auto& [b, c] : ext.mul_basis(x, y)) sv_axpy(lhs, c, img[b]);
      SparseVec rhs = dyn.mul(img[x], img[y]);
      REQUIRE(lhs == rhs);
    }
}
