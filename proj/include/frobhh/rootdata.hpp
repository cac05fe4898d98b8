#pragma once

#include "frobhh/intmat.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

namespace frobhh {

enum class Family { A, D, E };

inline char family_char(Family f) { return f == Family::A ? 'A' : f == Family::D ? 'D' : 'E'; }

// ADE (or extended ADE) graph with root-system combinatorics.
//
// Vertex labeling (0-based):
//   A_n : chain 0-1-...-(n-1)
//   D_n : chain 0-...-(n-3), fork tips n-2 and n-1 attached to n-3
//   E_n : chain 0-...-(n-2), branch vertex n-1 attached to chain vertex 2
// The extending vertex of an extended graph is always the last index.
struct DynkinGraph {
  Family family = Family::A;
  int rank = 1;
  bool extended = false;
  int n = 1;                                  // number of vertices (rank, or rank+1)
  std::vector<std::pair<int, int>> edges;     // unordered pairs, deterministic order
  std::vector<std::pair<int, int>> arrows;    // orientation: (tail, head) per edge
  IntMat adjacency;                           // C
  IntMat cartan;                              // 2*Id - C
  int coxeter_number = 2;                     // h (of the underlying finite type)
  std::vector<int> exponents;                 // m_1 <= ... <= m_rank
  std::vector<int> eta_bar;                   // involution on vertices
  IntMat P;                                   // permutation matrix of eta_bar

  std::string spec_string() const {
    std::string s;
    s += family_char(family);
    s += std::to_string(rank);
    if (extended) s += "~";
    return s;
  }
  int extending_vertex() const { return extended ? n - 1 : -1; }
};

namespace detail {

inline std::vector<int> ade_exponents(Family f, int rank, int& h) {
  std::vector<int> m;
  switch (f) {
    case Family::A:
      h = rank + 1;
      for (int i = 1; i <= rank; ++i) m.push_back(i);
      break;
    case Family::D:
      h = 2 * rank - 2;
      for (int i = 1; i <= h - 1; i += 2) m.push_back(i);
      m.push_back(rank - 1);
      break;
    case Family::E:
      if (rank == 6) { h = 12; m = {1, 4, 5, 7, 8, 11}; }
      else if (rank == 7) { h = 18; m = {1, 5, 7, 9, 11, 13, 17}; }
      else { h = 30; m = {1, 7, 11, 13, 17, 19, 23, 29}; }
      break;
  }
  std::sort(m.begin(), m.end());
  return m;
}

}  // namespace detail

inline DynkinGraph build_dynkin(Family family, int rank, bool extended) {
  bool legal = (family == Family::A && rank >= 1) || (family == Family::D && rank >= 4) ||
               (family == Family::E && rank >= 6 && rank <= 8);
  if (!legal)
    throw IllegalType(std::string(1, family_char(family)) + std::to_string(rank));

  DynkinGraph g;
  g.family = family;
  g.rank = rank;
  g.extended = extended;
  g.n = rank + (extended ? 1 : 0);

  auto edge = [&](int a, int b) { g.edges.emplace_back(std::min(a, b), std::max(a, b)); };
  switch (family) {
    case Family::A:
      for (int i = 0; i + 1 < rank; ++i) edge(i, i + 1);
      if (extended) {
        edge(0, rank);
        if (rank > 1) edge(rank - 1, rank);
        else g.edges.emplace_back(0, 1);  // A_1~: doubled edge
      }
      break;
    case Family::D:
      for (int i = 0; i + 1 <= rank - 3; ++i) edge(i, i + 1);
      edge(rank - 3, rank - 2);
      edge(rank - 3, rank - 1);
      if (extended) edge(1, rank);
      break;
    case Family::E:
      for (int i = 0; i + 1 <= rank - 2; ++i) edge(i, i + 1);
      edge(2, rank - 1);
      if (extended) {
        if (rank == 6) edge(rank - 1, rank);
        else if (rank == 7) edge(0, rank);
        else edge(rank - 2, rank);
      }
      break;
  }
  std::sort(g.edges.begin(), g.edges.end());
  for (auto [a, b] : g.edges) g.arrows.emplace_back(a, b);  // head = higher index

  g.adjacency = IntMat(g.n, g.n);
  for (auto [a, b] : g.edges) {
    g.adjacency.at(a, b) += 1;
    g.adjacency.at(b, a) += 1;
  }
  g.cartan = IntMat::identity(g.n).scaled(2) - g.adjacency;

  int h = 0;
  g.exponents = detail::ade_exponents(family, rank, h);
  g.coxeter_number = h;

  g.eta_bar.resize(g.n);
  for (int i = 0; i < g.n; ++i) g.eta_bar[i] = i;
  if (!extended) {
    if (family == Family::A) {
      for (int i = 0; i < rank; ++i) g.eta_bar[i] = rank - 1 - i;
    } else if (family == Family::D && rank % 2 == 1) {
      std::swap(g.eta_bar[rank - 2], g.eta_bar[rank - 1]);
    } else if (family == Family::E && rank == 6) {
      g.eta_bar = {4, 3, 2, 1, 0, 5};
    }
  }
  g.P = IntMat(g.n, g.n);
  for (int i = 0; i < g.n; ++i) g.P.at(g.eta_bar[i], i) = 1;

  // invariants
  if (!extended) {
    if (g.exponents.back() + 1 != h) throw RecurrenceInconsistent("h != m_max + 1");
    int sum = 0;
    for (int m : g.exponents) sum += m;
    if (2 * sum != rank * h) throw RecurrenceInconsistent("sum of exponents != rank*h/2");
    for (int i = 0; i < rank; ++i)
      if (g.exponents[i] + g.exponents[rank - 1 - i] != h)
        throw RecurrenceInconsistent("exponents not symmetric under m -> h-m");
  }
  for (int i = 0; i < g.n; ++i)
    if (g.eta_bar[g.eta_bar[i]] != i) throw RecurrenceInconsistent("eta_bar not an involution");
  return g;
}

// "A2", "D4~", "E6", ...
inline DynkinGraph parse_quiver_spec(const std::string& spec) {
  if (spec.size() < 2) throw SpecError("bad quiver spec: " + spec);
  Family f;
  switch (spec[0]) {
    case 'A': f = Family::A; break;
    case 'D': f = Family::D; break;
    case 'E': f = Family::E; break;
    default: throw SpecError("bad quiver family: " + spec);
  }
  bool ext = spec.back() == '~';
  std::string num = spec.substr(1, spec.size() - 1 - (ext ? 1 : 0));
  int rank = 0;
  try {
    rank = std::stoi(num);
  } catch (...) {
    throw SpecError("bad quiver rank: " + spec);
  }
  return build_dynkin(f, rank, ext);
}

// Custom quiver files: one directive per line, "edge i j" with 0-based
// vertices (directed i -> j).  The underlying graph must be ADE or extended
// ADE; vertices are relabeled to the canonical order and the given
// orientation is carried over.
inline DynkinGraph parse_quiver_file(std::istream& in) {
  std::vector<std::pair<int, int>> dir_edges;
  int maxv = -1;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "vertex") {
      int v; ls >> v; maxv = std::max(maxv, v);
    } else if (tok == "edge") {
      int a, b;
      if (!(ls >> a >> b)) throw SpecError("bad edge line: " + line);
      dir_edges.emplace_back(a, b);
      maxv = std::max({maxv, a, b});
    } else if (!tok.empty() && tok[0] != '#') {
      throw SpecError("bad directive: " + tok);
    }
  }
  int n = maxv + 1;
  if (n <= 0 || dir_edges.empty()) {
    if (n == 1) return build_dynkin(Family::A, 1, false);
    throw SpecError("empty quiver file");
  }
  // classify the underlying graph
  std::vector<std::set<int>> adj(n);
  for (auto [a, b] : dir_edges) {
    if (a == b) throw IllegalType("loop edge");
    adj[a].insert(b);
    adj[b].insert(a);
  }
  int nedges = int(dir_edges.size());
  bool tree = (nedges == n - 1);
  bool onecycle = (nedges == n);
  if (!tree && !onecycle) throw IllegalType("graph is neither a tree nor cycle-rank one");

  std::vector<int> deg(n);
  for (int i = 0; i < n; ++i) deg[i] = int(adj[i].size());
  // A_1~ stores a doubled edge, which the set-based adj cannot see
  if (n == 2 && nedges == 2) { deg[0] = deg[1] = 2; onecycle = true; tree = false; }

  DynkinGraph canon;
  if (!tree) {
    // single cycle: extended A
    for (int i = 0; i < n; ++i)
      if (deg[i] != 2) throw IllegalType("cycle graph with a branch is not extended A");
    canon = build_dynkin(Family::A, n - 1, true);
  } else {
    std::vector<int> branches;
    for (int i = 0; i < n; ++i)
      if (deg[i] >= 3) branches.push_back(i);
    auto arm_lengths = [&](int b) {
      std::vector<int> arms;
      for (int s : adj[b]) {
        int len = 1, prev = b, cur = s;
        while (deg[cur] == 2) {
          int nxt = -1;
          for (int t : adj[cur])
            if (t != prev) nxt = t;
          prev = cur; cur = nxt; ++len;
        }
        if (deg[cur] >= 3) len = -1;  // arm runs into another branch vertex
        arms.push_back(len);
      }
      std::sort(arms.begin(), arms.end());
      return arms;
    };
    if (branches.empty()) {
      canon = build_dynkin(Family::A, n, false);
    } else if (branches.size() == 1) {
      int b = branches[0];
      std::vector<int> arms = arm_lengths(b);
      if (deg[b] == 4 && arms == std::vector<int>({1, 1, 1, 1})) {
        canon = build_dynkin(Family::D, 4, true);
      } else if (deg[b] == 3) {
        if (arms[0] == 1 && arms[1] == 1)
          canon = build_dynkin(Family::D, n, false);
        else if (arms == std::vector<int>({1, 2, 2}))
          canon = build_dynkin(Family::E, 6, false);
        else if (arms == std::vector<int>({1, 2, 3}))
          canon = build_dynkin(Family::E, 7, false);
        else if (arms == std::vector<int>({1, 2, 4}))
          canon = build_dynkin(Family::E, 8, false);
        else if (arms == std::vector<int>({2, 2, 2}))
          canon = build_dynkin(Family::E, 6, true);
        else if (arms == std::vector<int>({1, 3, 3}))
          canon = build_dynkin(Family::E, 7, true);
        else if (arms == std::vector<int>({1, 2, 5}))
          canon = build_dynkin(Family::E, 8, true);
        else
          throw IllegalType("tree is not (extended) ADE");
      } else {
        throw IllegalType("branch vertex of degree > 4");
      }
    } else if (branches.size() == 2 && deg[branches[0]] == 3 && deg[branches[1]] == 3) {
      // two forks: extended D
      for (int b : branches) {
        std::vector<int> arms = arm_lengths(b);
        if (!(arms[0] == 1 && arms[1] == 1)) throw IllegalType("tree is not extended D");
      }
      canon = build_dynkin(Family::D, n - 1, true);
    } else {
      throw IllegalType("tree is not (extended) ADE");
    }
  }
  // find a graph isomorphism custom -> canonical (n <= 9: backtracking)
  std::vector<int> perm(n, -1), used(canon.n, 0);
  std::vector<std::set<int>> cadj(canon.n);
  for (auto [a, b] : canon.edges) { cadj[a].insert(b); cadj[b].insert(a); }
  std::function<bool(int)> place = [&](int v) -> bool {
    if (v == n) return true;
    for (int w = 0; w < canon.n; ++w) {
      if (used[w] || int(cadj[w].size()) != deg[v]) continue;
      bool ok = true;
      for (int u : adj[v])
        if (perm[u] >= 0 && !cadj[w].count(perm[u])) { ok = false; break; }
      if (!ok) continue;
      perm[v] = w; used[w] = 1;
      if (place(v + 1)) return true;
      perm[v] = -1; used[w] = 0;
    }
    return false;
  };
  if (!place(0)) throw IllegalType("graph is not isomorphic to an ADE diagram");
  // carry the file orientation over (multi-edges of A1~ keep default)
  for (auto& ar : canon.arrows) {
    for (auto [a, b] : dir_edges)
      if ((perm[a] == ar.first && perm[b] == ar.second) ||
          (perm[a] == ar.second && perm[b] == ar.first)) {
        ar = {perm[a], perm[b]};
        break;
      }
  }
  return canon;
}

// All positive roots via reflection closure from the simple roots.
inline std::vector<std::vector<int>> positive_roots(const DynkinGraph& g) {
  if (g.extended) throw SpecError("positive_roots: extended graph");
  int n = g.n;
  std::set<std::vector<int>> roots;
  std::vector<std::vector<int>> queue;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    roots.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    std::vector<int> a = queue.back();
    queue.pop_back();
    for (int i = 0; i < n; ++i) {
      // s_i(a) = a - <a, alpha_i^vee> alpha_i, pairing via the Cartan matrix
      Int pair = 0;
      for (int j = 0; j < n; ++j) pair += g.cartan.at(i, j) * a[j];
      std::vector<int> b = a;
      b[i] -= int(pair.convert_to<long long>());
      bool pos = true, neg = true;
      for (int v : b) {
        if (v > 0) neg = false;
        if (v < 0) pos = false;
      }
      if (pos && !roots.count(b)) {
        roots.insert(b);
        queue.push_back(b);
      }
      (void)neg;
    }
  }
  std::vector<std::vector<int>> out(roots.begin(), roots.end());
  if (int(out.size()) * 2 != g.n * g.coxeter_number)
    throw RecurrenceInconsistent("positive root count != rank*h/2");
  return out;
}

struct HilbertMatrices {
  std::vector<IntMat> h_d;  // d = 0 .. h-2
  IntMat H;                 // sum, = (1+P)(2-C)^{-1}
};

// h_0 = Id, h_1 = C, h_d = C h_{d-1} - h_{d-2};  h(A;t) = (1+P t^h)(1-Ct+t^2)^{-1}.
inline HilbertMatrices hilbert_matrices(const DynkinGraph& g) {
  if (g.extended) throw SpecError("hilbert_matrices: extended graph");
  int h = g.coxeter_number;
  HilbertMatrices out;
  int n = g.n;
  out.h_d.push_back(IntMat::identity(n));
  if (h >= 3) out.h_d.push_back(g.adjacency);
  for (int d = 2; d <= h - 2; ++d)
    out.h_d.push_back(g.adjacency.mul(out.h_d[d - 1]) - out.h_d[d - 2]);
  // termination: the recurrence continued past h-2 must hit 0 and then -P-ish,
  // equivalently coefficient identities of (1 - Ct + t^2) h(A;t) = 1 + P t^h.
  auto coeff = [&](int d) -> IntMat {
    if (d < 0 || d > h - 2) return IntMat::zero(n, n);
    return out.h_d[d];
  };
  for (int d = 1; d < h; ++d) {
    IntMat lhs = coeff(d) - g.adjacency.mul(coeff(d - 1)) + coeff(d - 2);
    if (!lhs.is_zero()) throw RecurrenceInconsistent("t^" + std::to_string(d));
  }
  IntMat top = coeff(h) - g.adjacency.mul(coeff(h - 1)) + coeff(h - 2);
  if (!(top == g.P)) throw RecurrenceInconsistent("t^h coefficient != P");

  out.H = IntMat::zero(n, n);
  for (const auto& m : out.h_d) out.H = out.H + m;
  // exact identity H (2 - C) = 1 + P over Z
  IntMat lhs = out.H.mul(g.cartan);
  IntMat rhs = IntMat::identity(n) + g.P;
  if (!(lhs == rhs)) throw RecurrenceInconsistent("H_Q (2-C) != 1+P");
  return out;
}

// Adjacency eigenvalues are 2 cos(m_i pi / h): numeric check plus an exact
// certificate via the characteristic polynomial over Z.
inline bool exponents_certified(const DynkinGraph& g, double tol = 1e-9) {
  if (g.extended) return true;
  int n = g.n, h = g.coxeter_number;
  // char poly of adjacency by Faddeev-LeVerrier (integer arithmetic)
  std::vector<Int> c(n + 1);
  c[n] = 1;
  IntMat M = IntMat::zero(n, n);
  for (int k = 1; k <= n; ++k) {
    M = g.adjacency.mul(M);
    for (int i = 0; i < n; ++i) M.at(i, i) += c[n - k + 1];
    Int tr = 0;
    IntMat AM = g.adjacency.mul(M);
    for (int i = 0; i < n; ++i) tr += AM.at(i, i);
    c[n - k] = -tr / k;
  }
  // numeric product of (x - 2cos(m_i pi/h))
  std::vector<double> poly{1.0};
  for (int m : g.exponents) {
    double lam = 2.0 * std::cos(m * M_PI / h);
    std::vector<double> next(poly.size() + 1, 0.0);
    for (size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i] * (-lam);
      next[i + 1] += poly[i];
    }
    poly = next;
  }
  for (int i = 0; i <= n; ++i) {
    double want = double(c[i].convert_to<long long>());
    if (std::abs(poly[i] - want) > 1e-6) return false;
  }
  // numeric eigenvalue check: |p_C(2cos(m pi/h))| < tol
  for (int m : g.exponents) {
    double lam = 2.0 * std::cos(m * M_PI / h), v = 0, powl = 1;
    for (int i = 0; i <= n; ++i) {
      v += double(c[i].convert_to<long long>()) * powl;
      powl *= lam;
    }
    if (std::abs(v) > tol * std::pow(2.0, n)) return false;
  }
  return true;
}

}  // namespace frobhh
