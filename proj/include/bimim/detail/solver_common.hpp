#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bimim/branch_decomposition.hpp"
#include "bimim/digraph.hpp"
#include "bimim/nbhd.hpp"

namespace bimim::detail {

// Branch decomposition rooted for dynamic programming: the lexicographically
// least tree edge is subdivided by a fresh degree-2 root, and every node
// records the set V_t of graph vertices mapped below it.
struct RootedDecomposition {
  int nodes = 0;
  int root = -1;
  std::vector<std::array<int, 2>> children;  // -1 for absent
  std::vector<int> vertex;                   // mapped graph vertex or -1
  std::vector<int> postorder;
  std::vector<std::vector<int>> below;       // V_t, ascending
  std::vector<std::vector<int>> above;       // complement of V_t, ascending
};

inline RootedDecomposition root_decomposition(const Digraph& g, const BranchDecomposition& bd) {
  validate_decomposition(bd, g.vertex_count());
  RootedDecomposition rd;
  rd.nodes = bd.tree_nodes + 1;
  rd.root = bd.tree_nodes;

  size_t split = 0;
  auto norm = [](Edge e) {
    return e.first < e.second ? e : Edge{e.second, e.first};
  };
  for (size_t i = 1; i < bd.tree_edges.size(); ++i)
    if (norm(bd.tree_edges[i]) < norm(bd.tree_edges[split])) split = i;

  std::vector<std::vector<int>> adj(rd.nodes);
  for (size_t i = 0; i < bd.tree_edges.size(); ++i) {
    auto [x, y] = bd.tree_edges[i];
    if (i == split) {
      adj[x].push_back(rd.root);
      adj[rd.root].push_back(x);
      adj[y].push_back(rd.root);
      adj[rd.root].push_back(y);
    } else {
      adj[x].push_back(y);
      adj[y].push_back(x);
    }
  }

  rd.children.assign(rd.nodes, {-1, -1});
  rd.vertex.assign(rd.nodes, -1);
  for (int node = 0; node < bd.tree_nodes; ++node) rd.vertex[node] = bd.vertex_of_node[node];

  std::vector<int> parent(rd.nodes, -2), order;
  parent[rd.root] = -1;
  std::vector<int> stack{rd.root};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    order.push_back(x);
    for (int y : adj[x])
      if (parent[y] == -2) {
        parent[y] = x;
        if (rd.children[x][0] == -1)
          rd.children[x][0] = y;
        else
          rd.children[x][1] = y;
        stack.push_back(y);
      }
  }

  rd.below.assign(rd.nodes, {});
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int x = *it;
    rd.postorder.push_back(x);
    if (rd.vertex[x] >= 0) rd.below[x].push_back(rd.vertex[x]);
    for (int c : rd.children[x])
      if (c != -1) {
        std::vector<int> merged;
        merged.reserve(rd.below[x].size() + rd.below[c].size());
        std::merge(rd.below[x].begin(), rd.below[x].end(), rd.below[c].begin(),
                   rd.below[c].end(), std::back_inserter(merged));
        rd.below[x] = std::move(merged);
      }
  }
  rd.above.assign(rd.nodes, {});
  for (int x = 0; x < rd.nodes; ++x) {
    const auto& b = rd.below[x];
    size_t i = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (i < b.size() && b[i] == v)
        ++i;
      else
        rd.above[x].push_back(v);
    }
  }
  return rd;
}

// Positions of the target-domain vertices inside a superset source domain.
inline std::vector<int> restriction_positions(const std::vector<int>& source,
                                              const std::vector<int>& target) {
  std::vector<int> pos(target.size());
  size_t i = 0;
  for (size_t t = 0; t < target.size(); ++t) {
    while (i < source.size() && source[i] < target[t]) ++i;
    if (i >= source.size() || source[i] != target[t])
      throw std::logic_error("restriction: target vertex missing from source domain");
    pos[t] = static_cast<int>(i);
  }
  return pos;
}

// Pairwise class-combination map: combined(i, j) = class id, in `target`, of
// the capped entrywise sum of class i of `left` and class j of `right`,
// restricted to the target domain. Lookups that miss indicate a bug (every
// combined description is realized by the union of the witnesses).
class PairCombineMap {
 public:
  PairCombineMap(const ClassIndex& left, const ClassIndex& right, const ClassIndex& target)
      : cols_(right.size()), ids_(left.size() * right.size()) {
    auto lpos = restriction_positions(left.domain(), target.domain());
    auto rpos = restriction_positions(right.domain(), target.domain());
    size_t len = target.domain().size();
    int cap = target.cap();
    size_t loff = left.domain().size(), roff = right.domain().size();
    std::vector<uint8_t> combined(2 * len);
    for (size_t i = 0; i < left.size(); ++i) {
      const auto& ld = left.raw_desc(static_cast<uint32_t>(i));
      for (size_t j = 0; j < right.size(); ++j) {
        const auto& rd = right.raw_desc(static_cast<uint32_t>(j));
        for (size_t t = 0; t < len; ++t) {
          combined[t] =
              static_cast<uint8_t>(std::min<int>(cap, ld[lpos[t]] + rd[rpos[t]]));
          combined[len + t] = static_cast<uint8_t>(
              std::min<int>(cap, ld[loff + lpos[t]] + rd[roff + rpos[t]]));
        }
        uint32_t id = target.find_raw(combined);
        if (id == ClassIndex::npos)
          throw std::logic_error("class combination fell outside the enumerated index");
        ids_[i * cols_ + j] = id;
      }
    }
  }

  uint32_t operator()(size_t i, size_t j) const { return ids_[i * cols_ + j]; }

 private:
  size_t cols_;
  std::vector<uint32_t> ids_;
};

}  // namespace bimim::detail
