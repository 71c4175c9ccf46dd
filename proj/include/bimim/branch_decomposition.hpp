#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "bimim/detail/bitset.hpp"
#include "bimim/digraph.hpp"

namespace bimim {

// Branch decomposition: a subcubic tree plus a bijection between graph
// vertices and tree leaves. As a convention for single-vertex graphs the
// tree is one edge with a single mapped leaf (the other leaf stays
// unmapped); no cut exists there, so the width is 0.
struct BranchDecomposition {
  int tree_nodes = 0;
  std::vector<Edge> tree_edges;        // undirected, stored as given
  std::vector<int> leaf_of_vertex;     // graph vertex -> tree node
  std::vector<int> vertex_of_node;     // tree node -> graph vertex or -1

  int vertex_count() const { return static_cast<int>(leaf_of_vertex.size()); }

  static BranchDecomposition make(int tree_nodes, std::vector<Edge> tree_edges,
                                  const std::vector<std::pair<int, int>>& leaf_map,
                                  int n_vertices) {
    BranchDecomposition bd;
    bd.tree_nodes = tree_nodes;
    bd.tree_edges = std::move(tree_edges);
    bd.leaf_of_vertex.assign(n_vertices, -1);
    bd.vertex_of_node.assign(tree_nodes, -1);
    for (auto [node, vertex] : leaf_map) {
      if (node < 0 || node >= tree_nodes)
        throw std::invalid_argument("branch decomposition: leaf tree node out of range");
      if (vertex < 0 || vertex >= n_vertices)
        throw std::invalid_argument("branch decomposition: mapped graph vertex out of range");
      if (bd.vertex_of_node[node] != -1)
        throw std::invalid_argument("branch decomposition: tree node mapped twice");
      if (bd.leaf_of_vertex[vertex] != -1)
        throw std::invalid_argument("branch decomposition: graph vertex mapped twice");
      bd.vertex_of_node[node] = vertex;
      bd.leaf_of_vertex[vertex] = node;
    }
    return bd;
  }
};

namespace detail {

inline std::vector<std::vector<int>> tree_adjacency(const BranchDecomposition& bd) {
  std::vector<std::vector<int>> adj(bd.tree_nodes);
  for (auto [x, y] : bd.tree_edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  return adj;
}

}  // namespace detail

// Throws with the violated invariant named unless bd is a valid branch
// decomposition for an n-vertex graph.
inline void validate_decomposition(const BranchDecomposition& bd, int n) {
  if (bd.vertex_count() != n)
    throw std::invalid_argument("branch decomposition: leaf map covers " +
                                std::to_string(bd.vertex_count()) + " vertices, graph has " +
                                std::to_string(n));
  if (bd.tree_nodes < 2)
    throw std::invalid_argument("branch decomposition: tree must have >= 2 nodes");
  if (static_cast<int>(bd.tree_edges.size()) != bd.tree_nodes - 1)
    throw std::invalid_argument("branch decomposition: tree edge count != nodes - 1");
  auto adj = detail::tree_adjacency(bd);
  for (auto [x, y] : bd.tree_edges)
    if (x < 0 || x >= bd.tree_nodes || y < 0 || y >= bd.tree_nodes || x == y)
      throw std::invalid_argument("branch decomposition: bad tree edge");
  // Connectivity (with the right edge count this also rules out cycles).
  std::vector<char> seen(bd.tree_nodes, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw std::invalid_argument("branch decomposition: tree is not connected");
  for (int x = 0; x < bd.tree_nodes; ++x) {
    size_t deg = adj[x].size();
    if (deg != 1 && deg != 3)
      throw std::invalid_argument("branch decomposition: internal tree node " +
                                  std::to_string(x) + " has degree " + std::to_string(deg) +
                                  ", tree is not subcubic");
  }
  int leaves = 0;
  for (int x = 0; x < bd.tree_nodes; ++x)
    if (adj[x].size() == 1) {
      ++leaves;
      if (bd.vertex_of_node[x] == -1 && !(n == 1 && bd.tree_nodes == 2))
        throw std::invalid_argument("branch decomposition: unmapped leaf node " +
                                    std::to_string(x));
    } else if (bd.vertex_of_node[x] != -1) {
      throw std::invalid_argument("branch decomposition: internal node " + std::to_string(x) +
                                  " carries a leaf mapping");
    }
  for (int v = 0; v < n; ++v)
    if (bd.leaf_of_vertex[v] == -1)
      throw std::invalid_argument("branch decomposition: vertex " + std::to_string(v) +
                                  " is not mapped to a leaf");
  if (n >= 2 && leaves != n)
    throw std::invalid_argument("branch decomposition: leaf map is not a bijection (" +
                                std::to_string(leaves) + " leaves, " + std::to_string(n) +
                                " vertices)");
}

// Caterpillar decomposition realizing a vertex order: the cut after
// position i is (order[0..i], rest).
inline BranchDecomposition linear_decomposition(const std::vector<int>& order) {
  int n = static_cast<int>(order.size());
  if (n == 0) throw std::invalid_argument("linear_decomposition: empty order");
  std::vector<char> seen(n, 0);
  for (int v : order) {
    if (v < 0 || v >= n || seen[v])
      throw std::invalid_argument("linear_decomposition: order is not a permutation");
    seen[v] = 1;
  }
  BranchDecomposition bd;
  if (n == 1) {
    bd.tree_nodes = 2;
    bd.tree_edges = {{0, 1}};
    bd.leaf_of_vertex = {0};
    bd.vertex_of_node = {order[0], -1};
    return bd;
  }
  if (n == 2) {
    bd.tree_nodes = 2;
    bd.tree_edges = {{0, 1}};
    bd.leaf_of_vertex.assign(2, -1);
    bd.vertex_of_node = {order[0], order[1]};
    bd.leaf_of_vertex[order[0]] = 0;
    bd.leaf_of_vertex[order[1]] = 1;
    return bd;
  }
  // Leaves 0..n-1 in order; spine nodes n..2n-3. Leaf 0 and leaf n-1 hang
  // off the two spine ends so every internal node has degree 3.
  bd.tree_nodes = 2 * n - 2;
  bd.leaf_of_vertex.assign(n, -1);
  bd.vertex_of_node.assign(bd.tree_nodes, -1);
  for (int i = 0; i < n; ++i) {
    bd.vertex_of_node[i] = order[i];
    bd.leaf_of_vertex[order[i]] = i;
  }
  int spine0 = n;
  bd.tree_edges.emplace_back(0, spine0);
  for (int i = 1; i <= n - 2; ++i) bd.tree_edges.emplace_back(spine0 + i - 1, i);
  for (int i = 0; i + 1 <= n - 3; ++i) bd.tree_edges.emplace_back(spine0 + i, spine0 + i + 1);
  bd.tree_edges.emplace_back(spine0 + n - 3, n - 1);
  return bd;
}

// A-sides of the cuts induced by each tree edge, computed by one DFS over
// the tree: cut i corresponds to tree_edges[i], with the A side taken from
// the component containing tree_edges[i].first.
inline std::vector<detail::Bitset> decomposition_cuts(const Digraph& g,
                                                      const BranchDecomposition& bd) {
  validate_decomposition(bd, g.vertex_count());
  auto adj = detail::tree_adjacency(bd);
  int root = 0;
  std::vector<int> parent(bd.tree_nodes, -2), order;
  order.reserve(bd.tree_nodes);
  parent[root] = -1;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    order.push_back(x);
    for (int y : adj[x])
      if (parent[y] == -2) {
        parent[y] = x;
        stack.push_back(y);
      }
  }
  std::vector<detail::Bitset> below(bd.tree_nodes, detail::Bitset(g.vertex_count()));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int x = *it;
    if (bd.vertex_of_node[x] >= 0) below[x].set(bd.vertex_of_node[x]);
    if (parent[x] >= 0) below[parent[x]] |= below[x];
  }
  std::vector<detail::Bitset> cuts;
  cuts.reserve(bd.tree_edges.size());
  for (auto [x, y] : bd.tree_edges) {
    // The subtree side of the child endpoint; flip if x is the parent so the
    // reported set is always the component of x.
    if (parent[y] == x) {
      detail::Bitset a = below[root];
      a ^= below[y];
      cuts.push_back(std::move(a));
    } else {
      cuts.push_back(below[x]);
    }
  }
  return cuts;
}

}  // namespace bimim
