#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobhh/rootdata.hpp"

#include <sstream>

using namespace frobhh;

TEST_CASE("build_dynkin basics") {
  auto a2 = build_dynkin(Family::A, 2, false);
  CHECK(a2.coxeter_number == 3);
  CHECK(a2.exponents == std::vector<int>({1, 2}));
  CHECK(a2.eta_bar == std::vector<int>({1, 0}));

  auto d4 = build_dynkin(Family::D, 4, false);
  CHECK(d4.coxeter_number == 6);
  CHECK(d4.exponents == std::vector<int>({1, 3, 3, 5}));
  CHECK(d4.eta_bar == std::vector<int>({0, 1, 2, 3}));

  auto a1 = build_dynkin(Family::A, 1, false);
  CHECK(a1.coxeter_number == 2);
  CHECK(a1.exponents == std::vector<int>({1}));
  CHECK(a1.edges.empty());

  auto d5 = build_dynkin(Family::D, 5, false);
  CHECK(d5.eta_bar == std::vector<int>({0, 1, 2, 4, 3}));
  auto e6 = build_dynkin(Family::E, 6, false);
  CHECK(e6.eta_bar == std::vector<int>({4, 3, 2, 1, 0, 5}));
  CHECK(e6.coxeter_number == 12);

  CHECK_THROWS_AS(build_dynkin(Family::E, 9, false), IllegalType);
  CHECK_THROWS_AS(build_dynkin(Family::D, 3, false), IllegalType);
}

TEST_CASE("adjacency eigenvalues match exponents") {
  for (auto spec : {"A1", "A2", "A3", "A5", "D4", "D5", "D6", "E6", "E7", "E8"}) {
    auto g = parse_quiver_spec(spec);
    CAPTURE(spec);
    CHECK(exponents_certified(g));
  }
}

TEST_CASE("positive roots counts") {
  CHECK(positive_roots(build_dynkin(Family::A, 2, false)).size() == 3);
  CHECK(positive_roots(build_dynkin(Family::D, 4, false)).size() == 12);
  CHECK(positive_roots(build_dynkin(Family::E, 6, false)).size() == 36);
  auto r = positive_roots(build_dynkin(Family::A, 2, false));
  std::set<std::vector<int>> s(r.begin(), r.end());
  CHECK(s.count({1, 0}) == 1);
  CHECK(s.count({0, 1}) == 1);
  CHECK(s.count({1, 1}) == 1);
}

TEST_CASE("hilbert matrices") {
  auto a2 = hilbert_matrices(build_dynkin(Family::A, 2, false));
  CHECK(a2.H == [] {
    IntMat m(2, 2);
    m.at(0, 0) = m.at(0, 1) = m.at(1, 0) = m.at(1, 1) = 1;
    return m;
  }());

  auto a1 = hilbert_matrices(build_dynkin(Family::A, 1, false));
  CHECK(a1.H.rows == 1);
  CHECK(a1.H.at(0, 0) == 1);

  auto d4 = hilbert_matrices(build_dynkin(Family::D, 4, false));
  Int total = 0;
  for (const auto& x : d4.H.a) total += x;
  CHECK(total == 28);
  // center row (vertex 1 in our labeling) is (2,4,2,2) as a multiset {4,2,2,2}
  CHECK(d4.H.at(1, 1) == 4);
  CHECK(d4.H.at(1, 0) == 2);
  CHECK(d4.H.at(1, 2) == 2);
  CHECK(d4.H.at(1, 3) == 2);

  // H symmetric and entrywise positive; graded Poincare symmetry of totals
  for (auto spec : {"A3", "A4", "D4", "D5", "E6"}) {
    auto g = parse_quiver_spec(spec);
    auto hm = hilbert_matrices(g);
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        CHECK(hm.H.at(i, j) == hm.H.at(j, i));
        CHECK(hm.H.at(i, j) > 0);
      }
    int h = g.coxeter_number;
    for (int d = 0; d <= h - 2; ++d) {
      Int t1 = 0, t2 = 0;
      for (const auto& x : hm.h_d[d].a) t1 += x;
      for (const auto& x : hm.h_d[h - 2 - d].a) t2 += x;
      CHECK(t1 == t2);
    }
  }

  // E6 total dimension = 156
  auto e6 = hilbert_matrices(build_dynkin(Family::E, 6, false));
  Int te6 = 0;
  for (const auto& x : e6.H.a) te6 += x;
  CHECK(te6 == 156);
}

TEST_CASE("quiver spec strings") {
  auto g = parse_quiver_spec("D4~");
  CHECK(g.extended);
  CHECK(g.n == 5);
  CHECK(g.spec_string() == "D4~");
  CHECK_THROWS_AS(parse_quiver_spec("F4"), SpecError);
}

TEST_CASE("custom quiver file") {
  std::istringstream in("edge 0 1\nedge 2 1\n");
  auto g = parse_quiver_file(in);
  CHECK(g.family == Family::A);
  CHECK(g.rank == 3);
  // orientation carried over: both arrows point into the middle vertex
  int into_mid = 0;
  for (auto [t, h] : g.arrows)
    if (h == 1) ++into_mid;
  CHECK(into_mid == 2);

  std::istringstream star("edge 0 1\nedge 0 2\nedge 0 3\nedge 0 4\n");
  auto d4t = parse_quiver_file(star);
  CHECK(d4t.family == Family::D);
  CHECK(d4t.extended);
}
