#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bimim/digraph.hpp"
#include "bimim/representations.hpp"

namespace bimim {

struct GridOrientation {
  IntervalRep rep;
  Digraph digraph;
};

// Interval representation of an orientation of the (n x n) grid. Vertex
// (i, j), 1-based, sits at index (i-1)*n + (j-1). Odd columns i point up and
// sideways, even columns receive; every vertex is loop-free. The published
// T-interval for even i has its endpoints garbled (left exceeds right); the
// corrected interval [2(n+1)j+2i-1, 2(n+1)j+2i+1] mirrors the odd case and
// is validated against the stated edge rules below.
inline GridOrientation gen_grid_orientation(int n) {
  if (n < 2) throw std::invalid_argument("gen_grid_orientation: n must be >= 2");
  GridOrientation out;
  auto point = [n](int i, int j) { return 2LL * (n + 1) * (j - 1) + 2 * i; };
  auto center = [n](int i, int j) { return 2LL * (n + 1) * j + 2 * i; };
  out.rep.vertices.resize(static_cast<size_t>(n) * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      IntervalRep::Intervals iv;
      if (i % 2 == 1) {
        iv.s_lo = center(i, j) - 1;
        iv.s_hi = center(i, j) + 1;
        iv.t_lo = iv.t_hi = point(i, j);
      } else {
        iv.s_lo = iv.s_hi = point(i, j);
        iv.t_lo = center(i, j) - 1;
        iv.t_hi = center(i, j) + 1;
      }
      out.rep.vertices[static_cast<size_t>(i - 1) * n + (j - 1)] = iv;
    }
  out.digraph = realize(out.rep);

  // Post-check: the realization must be the stated grid orientation exactly.
  auto id = [n](int i, int j) { return (i - 1) * n + (j - 1); };
  auto fail = [](const std::string& what) {
    throw std::logic_error("gen_grid_orientation: internal consistency failure: " + what);
  };
  if (out.digraph.edge_count() != 2 * n * (n - 1)) fail("edge count is not 2n(n-1)");
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (out.digraph.has_loop(id(i, j))) fail("loop at a grid vertex");
      if (i < n) {
        bool odd = i % 2 == 1;
        if (!out.digraph.has_edge(id(odd ? i : i + 1, j), id(odd ? i + 1 : i, j)))
          fail("horizontal edge at column " + std::to_string(i) + " misdirected");
      }
      if (j < n) {
        bool odd = i % 2 == 1;
        if (!out.digraph.has_edge(id(i, odd ? j : j + 1), id(i, odd ? j + 1 : j)))
          fail("vertical edge in column " + std::to_string(i) + " misdirected");
      }
    }
  auto und = underlying(out.digraph);
  if (und.edge_count() != 2 * n * (n - 1)) fail("underlying graph is not the grid");
  return out;
}

// The tournament family from the unbounded-width construction: n^2 vertices
// v(i, j) with row, column, and mod-3 edge rules. The post-check asserts
// totality: every unordered pair gets exactly one direction.
inline Digraph gen_tournament(int n) {
  if (n < 2) throw std::invalid_argument("gen_tournament: n must be >= 2");
  auto id = [n](int i, int j) { return (i - 1) * n + (j - 1); };
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i)
    for (int j1 = 1; j1 <= n; ++j1)
      for (int j2 = j1 + 1; j2 <= n; ++j2) edges.push_back({id(i, j1), id(i, j2)});
  for (int i = 1; i < n; ++i)
    for (int j = 1; j <= n; ++j) edges.push_back({id(i, j), id(i + 1, j)});
  for (int i1 = 1; i1 <= n; ++i1)
    for (int i2 = i1 + 1; i2 <= n; ++i2)
      for (int j1 = 1; j1 <= n; ++j1)
        for (int j2 = 1; j2 <= n; ++j2) {
          int diff = (i2 - i1) % 3;
          if (diff == 0) {
            if (j1 >= j2)
              edges.push_back({id(i1, j1), id(i2, j2)});
            else
              edges.push_back({id(i2, j2), id(i1, j1)});
          } else if (diff == 1) {
            if (!(i2 == i1 + 1 && j2 == j1)) edges.push_back({id(i2, j2), id(i1, j1)});
          } else {
            edges.push_back({id(i1, j1), id(i2, j2)});
          }
        }
  Digraph g(n * n, std::move(edges));

  for (int u = 0; u < g.vertex_count(); ++u) {
    if (g.has_loop(u)) throw std::logic_error("gen_tournament: loop at vertex " + std::to_string(u));
    for (int v = u + 1; v < g.vertex_count(); ++v) {
      int directions = (g.has_edge(u, v) ? 1 : 0) + (g.has_edge(v, u) ? 1 : 0);
      if (directions != 1)
        throw std::logic_error("gen_tournament: pair (" + std::to_string(u) + ", " +
                               std::to_string(v) + ") covered " + std::to_string(directions) +
                               " times");
    }
  }
  return g;
}

// The P2-convex bipartite digraph whose B side replays the grid-orientation
// intervals as out/in neighborhoods on a path of integer points.
inline HConvexRep gen_p2_convex_grid(int n) {
  if (n < 2) throw std::invalid_argument("gen_p2_convex_grid: n must be >= 2");
  auto point = [n](int i, int j) { return 2LL * (n + 1) * (j - 1) + 2 * i; };
  auto center = [n](int i, int j) { return 2LL * (n + 1) * j + 2 * i; };
  long long max_coord = center(n, n) + 1;

  HConvexRep rep;
  UndirectedGraph host(2, {{0, 1}});
  rep.sub = HSubdivision::make(host, {static_cast<int>(max_coord) - 1});
  // F node of integer coordinate c on the path 0..max_coord.
  auto node_of = [max_coord](long long c) {
    if (c == 0) return 0;
    if (c == max_coord) return 1;
    return static_cast<int>(c) + 1;
  };
  rep.b_sets.resize(static_cast<size_t>(n) * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      std::vector<int> out_set, in_set;
      for (long long c = center(i, j) - 1; c <= center(i, j) + 1; ++c)
        out_set.push_back(node_of(c));
      in_set.push_back(node_of(point(i, j)));
      rep.b_sets[static_cast<size_t>(i - 1) * n + (j - 1)] = {out_set, in_set};
    }

  // Post-check: bipartite by construction, and the B vertices together with
  // the shared A points form an orientation of the 1-subdivision of the grid.
  Digraph g = realize(rep);
  int na = rep.a_count();
  auto b_id = [&](int i, int j) { return na + (i - 1) * n + (j - 1); };
  auto fail = [](const std::string& what) {
    throw std::logic_error("gen_p2_convex_grid: internal consistency failure: " + what);
  };
  for (auto [u, v] : g.edges())
    if ((u < na) == (v < na)) fail("realization is not bipartite");
  for (auto [u, v] : g.edges())
    if (g.has_edge(v, u)) fail("bi-directed edge; the family is never nice");

  // Expected 1-subdivision structure: one private witness point per grid
  // edge, linked (in one direction each way) to exactly its two endpoints.
  std::vector<std::vector<int>> expected_witnesses(g.vertex_count());
  std::vector<int> witness_endpoints(g.vertex_count(), 0);
  std::vector<char> is_witness(g.vertex_count(), 0);
  auto expect_link = [&](int b1, int b2, long long witness_coord) {
    int x = node_of(witness_coord);
    if (is_witness[x] && witness_endpoints[x] >= 2) fail("grid edges share a witness point");
    is_witness[x] = 1;
    witness_endpoints[x] += 2;
    expected_witnesses[b1].push_back(x);
    expected_witnesses[b2].push_back(x);
  };
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (j < n) expect_link(b_id(i, j), b_id(i, j + 1), center(i, j));
      if (i < n) expect_link(b_id(i, j), b_id(i + 1, j), center(i, j) + 1);
    }
  auto und = underlying(g);
  for (int b = na; b < g.vertex_count(); ++b) {
    std::vector<int> actual;
    for (int x : und.neighbors(b))
      if (is_witness[x]) actual.push_back(x);
    auto expect = expected_witnesses[b];
    std::sort(expect.begin(), expect.end());
    if (actual != expect) fail("B vertex is not linked to exactly its grid-edge witnesses");
  }
  for (int x = 0; x < na; ++x)
    if (is_witness[x]) {
      int b_degree = 0;
      for (int y : und.neighbors(x))
        if (y >= na) ++b_degree;
      if (b_degree != 2) fail("witness point is linked to more than its two endpoints");
    }
  return rep;
}

}  // namespace bimim
