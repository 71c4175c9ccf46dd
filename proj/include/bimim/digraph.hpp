#pragma once

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bimim/detail/bitset.hpp"

namespace bimim {

using Edge = std::pair<int, int>;

// Simple directed graph on vertices 0..n-1. Loops allowed, no multi-edges.
// Immutable after construction; adjacency is kept sorted both ways, plus a
// bit matrix for O(1) membership when n is small enough.
class Digraph {
 public:
  static constexpr int kBitMatrixLimit = 4096;

  Digraph() = default;

  Digraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0) throw std::invalid_argument("Digraph: negative vertex count");
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    out_.assign(n_, {});
    in_.assign(n_, {});
    for (auto [u, v] : edges_) {
      if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("Digraph: edge endpoint out of range: (" +
                                    std::to_string(u) + "," + std::to_string(v) + ")");
      out_[u].push_back(v);
      in_[v].push_back(u);
    }
    for (auto& a : in_) std::sort(a.begin(), a.end());
    if (n_ > 0 && n_ <= kBitMatrixLimit) {
      words_ = (n_ + 63) / 64;
      bits_.assign(static_cast<size_t>(n_) * words_, 0);
      for (auto [u, v] : edges_)
        bits_[static_cast<size_t>(u) * words_ + (v >> 6)] |= uint64_t{1} << (v & 63);
    }
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  const std::vector<int>& out_neighbors(int v) const { return out_[v]; }
  const std::vector<int>& in_neighbors(int v) const { return in_[v]; }
  int out_degree(int v) const { return static_cast<int>(out_[v].size()); }
  int in_degree(int v) const { return static_cast<int>(in_[v].size()); }

  bool has_edge(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) return false;
    if (!bits_.empty())
      return (bits_[static_cast<size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1;
    return std::binary_search(out_[u].begin(), out_[u].end(), v);
  }

  bool has_loop(int v) const { return has_edge(v, v); }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_, in_;
  std::vector<uint64_t> bits_;
  int words_ = 0;
};

// Simple undirected graph: no loops, no multi-edges. Edges normalized u < v.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;

  UndirectedGraph(int n, std::vector<Edge> edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("UndirectedGraph: negative vertex count");
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
      if (u == v) throw std::invalid_argument("UndirectedGraph: loop not allowed");
      if (u > v) std::swap(u, v);
      edges_.emplace_back(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    adj_.assign(n_, {});
    for (auto [u, v] : edges_) {
      if (u < 0 || v >= n_)
        throw std::invalid_argument("UndirectedGraph: edge endpoint out of range");
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  bool has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

enum class Direction { out, in };

inline UndirectedGraph underlying(const Digraph& g) {
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (u != v) edges.emplace_back(std::min(u, v), std::max(u, v));
  return UndirectedGraph(g.vertex_count(), std::move(edges));
}

inline Digraph biorientation(const UndirectedGraph& h) {
  std::vector<Edge> edges;
  edges.reserve(2 * h.edges().size());
  for (auto [u, v] : h.edges()) {
    edges.emplace_back(u, v);
    edges.emplace_back(v, u);
  }
  return Digraph(h.vertex_count(), std::move(edges));
}

inline Digraph reverse(const Digraph& g) {
  std::vector<Edge> edges;
  edges.reserve(g.edges().size());
  for (auto [u, v] : g.edges()) edges.emplace_back(v, u);
  return Digraph(g.vertex_count(), std::move(edges));
}

namespace detail {

// Directed BFS distances from (direction == out) or to (direction == in) v.
// Unreachable vertices get -1.
inline std::vector<int> bfs_distances(const Digraph& g, int v, Direction dir) {
  std::vector<int> dist(g.vertex_count(), -1);
  dist[v] = 0;
  std::queue<int> q;
  q.push(v);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    const auto& next = dir == Direction::out ? g.out_neighbors(x) : g.in_neighbors(x);
    for (int y : next)
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
  }
  return dist;
}

}  // namespace detail

// Vertices within directed distance r of v (including v itself at distance 0).
inline std::vector<int> ball(const Digraph& g, int v, int r, Direction dir) {
  if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("ball: vertex out of range");
  if (r < 0) throw std::invalid_argument("ball: negative radius");
  auto dist = detail::bfs_distances(g, v, dir);
  std::vector<int> out;
  for (int w = 0; w < g.vertex_count(); ++w)
    if (dist[w] >= 0 && dist[w] <= r) out.push_back(w);
  return out;
}

// r-th power: edge (x, y) iff some directed walk of length in [1, r] goes
// from x to y. For x == y that means a closed walk, so a loop appears when x
// lies on a directed cycle of length <= r or already has a loop.
inline Digraph power(const Digraph& g, int r) {
  if (r < 1) throw std::invalid_argument("power: r must be >= 1");
  int n = g.vertex_count();
  std::vector<Edge> edges;
  for (int x = 0; x < n; ++x) {
    auto dist = detail::bfs_distances(g, x, Direction::out);
    for (int y = 0; y < n; ++y)
      if (y != x && dist[y] >= 1 && dist[y] <= r) edges.emplace_back(x, y);
    for (int u : g.in_neighbors(x))
      if (dist[u] >= 0 && dist[u] + 1 <= r) {
        edges.emplace_back(x, x);
        break;
      }
  }
  return Digraph(n, std::move(edges));
}

// Induced subdigraph on s; vertices relabeled 0..|s|-1 in the order induced
// by ascending original index.
inline Digraph induced_subdigraph(const Digraph& g, const std::vector<int>& s) {
  std::vector<int> verts(s);
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::vector<int> label(g.vertex_count(), -1);
  for (size_t i = 0; i < verts.size(); ++i) {
    if (verts[i] < 0 || verts[i] >= g.vertex_count())
      throw std::invalid_argument("induced_subdigraph: vertex out of range");
    label[verts[i]] = static_cast<int>(i);
  }
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (label[u] >= 0 && label[v] >= 0) edges.emplace_back(label[u], label[v]);
  return Digraph(static_cast<int>(verts.size()), std::move(edges));
}

inline bool is_reflexive(const Digraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!g.has_loop(v)) return false;
  return true;
}

}  // namespace bimim
