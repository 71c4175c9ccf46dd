#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bimim/digraph.hpp"

namespace bimim {

// Interval representation: per vertex a source interval S and a target
// interval T of integers; edge (v, w) iff S_v meets T_w.
struct IntervalRep {
  struct Intervals {
    long long s_lo = 0, s_hi = 0, t_lo = 0, t_hi = 0;
  };
  std::vector<Intervals> vertices;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
};

// Permutation representation: S and T are segments with one endpoint on each
// of two parallel lines; the *_a coordinates live on line 1, *_b on line 2.
struct PermutationRep {
  struct Segments {
    long long s_a = 0, s_b = 0, t_a = 0, t_b = 0;
  };
  std::vector<Segments> vertices;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
};

// Rooted directed path representation: S and T are downward paths in a
// rooted directed tree, given by their top (closer to the root) and bottom
// nodes.
struct RootedDirPathRep {
  struct Paths {
    int s_top = 0, s_bot = 0, t_top = 0, t_bot = 0;
  };
  int tree_nodes = 0;
  int root = 0;
  std::vector<int> parent;  // parent[root] == -1
  std::vector<Paths> vertices;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
};

// A subdivision F of a host graph H. F-node ids 0..|V(H)|-1 are the images
// of the host vertices (the branching nodes); subdivision nodes come after
// and stay stable when edges are subdivided further.
struct HSubdivision {
  UndirectedGraph host;
  std::vector<std::vector<int>> per_edge;  // path-internal nodes per host edge,
                                           // ordered from the smaller endpoint
  UndirectedGraph f;

  int branching_count() const { return host.vertex_count(); }
  bool is_branching(int f_node) const { return f_node < host.vertex_count(); }

  static HSubdivision make(UndirectedGraph host_graph, std::vector<int> counts) {
    if (counts.size() != host_graph.edges().size())
      throw std::invalid_argument("HSubdivision: one subdivision count per host edge required");
    HSubdivision sub;
    sub.host = std::move(host_graph);
    int next = sub.host.vertex_count();
    std::vector<Edge> f_edges;
    for (size_t e = 0; e < counts.size(); ++e) {
      if (counts[e] < 0) throw std::invalid_argument("HSubdivision: negative count");
      auto [u, v] = sub.host.edges()[e];
      std::vector<int> path;
      for (int i = 0; i < counts[e]; ++i) path.push_back(next++);
      int prev = u;
      for (int z : path) {
        f_edges.push_back({prev, z});
        prev = z;
      }
      f_edges.push_back({prev, v});
      sub.per_edge.push_back(std::move(path));
    }
    sub.f = UndirectedGraph(next, std::move(f_edges));
    return sub;
  }

  // Splits the F-edge {x, y} with a fresh node; returns the new node id.
  int subdivide(int x, int y) {
    if (!f.has_edge(x, y)) throw std::invalid_argument("HSubdivision: no such F edge");
    int z = f.vertex_count();
    std::vector<Edge> edges;
    for (auto [a, b] : f.edges())
      if (!((a == x && b == y) || (a == y && b == x))) edges.push_back({a, b});
    edges.push_back({x, z});
    edges.push_back({z, y});
    f = UndirectedGraph(z + 1, std::move(edges));
    // Record z at its position along the branching path that carried {x, y}.
    for (size_t e = 0; e < per_edge.size(); ++e) {
      auto [u, v] = host.edges()[e];
      std::vector<int> walk{u};
      walk.insert(walk.end(), per_edge[e].begin(), per_edge[e].end());
      walk.push_back(v);
      for (size_t i = 0; i + 1 < walk.size(); ++i) {
        if ((walk[i] == x && walk[i + 1] == y) || (walk[i] == y && walk[i + 1] == x)) {
          per_edge[e].insert(per_edge[e].begin() + static_cast<long>(i), z);
          return z;
        }
      }
    }
    throw std::logic_error("HSubdivision: subdivided edge not found on any branching path");
  }
};

// Intersection representation by pairs of connected F-subgraphs.
struct HDigraphRep {
  HSubdivision sub;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> sets;  // (S_v, T_v)

  int vertex_count() const { return static_cast<int>(sets.size()); }
};

// Bipartite representation: side A is V(F); each B vertex carries the set of
// its out-neighbors and the set of its in-neighbors in A.
struct HConvexRep {
  HSubdivision sub;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> b_sets;  // (out, in)

  int a_count() const { return sub.f.vertex_count(); }
  int b_count() const { return static_cast<int>(b_sets.size()); }
};

namespace detail {

inline bool connected_in(const UndirectedGraph& f, const std::vector<int>& nodes) {
  if (nodes.empty()) return true;
  std::vector<char> member(f.vertex_count(), 0), seen(f.vertex_count(), 0);
  for (int v : nodes) {
    if (v < 0 || v >= f.vertex_count()) throw std::invalid_argument("node set out of range");
    member[v] = 1;
  }
  std::vector<int> stack{nodes[0]};
  seen[nodes[0]] = 1;
  int reached = 0;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    ++reached;
    for (int y : f.neighbors(x))
      if (member[y] && !seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
  }
  return reached == static_cast<int>(nodes.size());
}

inline bool sorted_intersects(const std::vector<int>& a, const std::vector<int>& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return false;
}

}  // namespace detail

inline void validate(const IntervalRep& rep) {
  for (size_t v = 0; v < rep.vertices.size(); ++v) {
    const auto& iv = rep.vertices[v];
    if (iv.s_lo > iv.s_hi)
      throw std::invalid_argument("IntervalRep: vertex " + std::to_string(v) + " has sLo > sHi");
    if (iv.t_lo > iv.t_hi)
      throw std::invalid_argument("IntervalRep: vertex " + std::to_string(v) + " has tLo > tHi");
  }
}

inline void validate(const RootedDirPathRep& rep) {
  if (rep.tree_nodes <= 0) throw std::invalid_argument("RootedDirPathRep: empty tree");
  if (rep.root < 0 || rep.root >= rep.tree_nodes)
    throw std::invalid_argument("RootedDirPathRep: root out of range");
  if (static_cast<int>(rep.parent.size()) != rep.tree_nodes)
    throw std::invalid_argument("RootedDirPathRep: parent array size mismatch");
  if (rep.parent[rep.root] != -1)
    throw std::invalid_argument("RootedDirPathRep: root must have parent -1");
  for (int x = 0; x < rep.tree_nodes; ++x) {
    if (x == rep.root) continue;
    if (rep.parent[x] < 0 || rep.parent[x] >= rep.tree_nodes)
      throw std::invalid_argument("RootedDirPathRep: node " + std::to_string(x) +
                                  " has invalid parent");
    // Every node must reach the root without a cycle.
    int hops = 0, cur = x;
    while (cur != rep.root) {
      cur = rep.parent[cur];
      if (cur < 0 || ++hops > rep.tree_nodes)
        throw std::invalid_argument("RootedDirPathRep: parent chain of node " +
                                    std::to_string(x) + " does not reach the root");
    }
  }
  auto check_path = [&](int top, int bot, const std::string& which, size_t v) {
    int hops = 0, cur = bot;
    while (cur != top) {
      if (cur == rep.root || ++hops > rep.tree_nodes)
        throw std::invalid_argument("RootedDirPathRep: " + which + " of vertex " +
                                    std::to_string(v) + ": bottom is not a descendant of top");
      cur = rep.parent[cur];
    }
  };
  for (size_t v = 0; v < rep.vertices.size(); ++v) {
    const auto& p = rep.vertices[v];
    for (int node : {p.s_top, p.s_bot, p.t_top, p.t_bot})
      if (node < 0 || node >= rep.tree_nodes)
        throw std::invalid_argument("RootedDirPathRep: vertex " + std::to_string(v) +
                                    " references a node out of range");
    check_path(p.s_top, p.s_bot, "S", v);
    check_path(p.t_top, p.t_bot, "T", v);
  }
}

inline void validate(const HDigraphRep& rep) {
  for (size_t v = 0; v < rep.sets.size(); ++v) {
    const auto& [s, t] = rep.sets[v];
    if (s.empty() || t.empty())
      throw std::invalid_argument("HDigraphRep: vertex " + std::to_string(v) +
                                  " has an empty set");
    if (!detail::connected_in(rep.sub.f, s))
      throw std::invalid_argument("HDigraphRep: S of vertex " + std::to_string(v) +
                                  " is not connected in F");
    if (!detail::connected_in(rep.sub.f, t))
      throw std::invalid_argument("HDigraphRep: T of vertex " + std::to_string(v) +
                                  " is not connected in F");
  }
}

inline void validate(const HConvexRep& rep) {
  for (size_t b = 0; b < rep.b_sets.size(); ++b) {
    const auto& [out, in] = rep.b_sets[b];
    if (!detail::connected_in(rep.sub.f, out))
      throw std::invalid_argument("HConvexRep: outSet of b-vertex " + std::to_string(b) +
                                  " is not connected in F");
    if (!detail::connected_in(rep.sub.f, in))
      throw std::invalid_argument("HConvexRep: inSet of b-vertex " + std::to_string(b) +
                                  " is not connected in F");
  }
}

inline Digraph realize(const IntervalRep& rep) {
  validate(rep);
  int n = rep.vertex_count();
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w) {
      const auto& sv = rep.vertices[v];
      const auto& tw = rep.vertices[w];
      if (std::max(sv.s_lo, tw.t_lo) <= std::min(sv.s_hi, tw.t_hi)) edges.push_back({v, w});
    }
  return Digraph(n, std::move(edges));
}

inline Digraph realize(const PermutationRep& rep) {
  int n = rep.vertex_count();
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w) {
      const auto& s = rep.vertices[v];
      const auto& t = rep.vertices[w];
      // Segments cross (or touch) iff their endpoint orders disagree.
      if ((s.s_a - t.t_a) * (s.s_b - t.t_b) <= 0) edges.push_back({v, w});
    }
  return Digraph(n, std::move(edges));
}

namespace detail {

inline std::vector<int> path_nodes(const RootedDirPathRep& rep, int top, int bot) {
  std::vector<int> nodes{bot};
  int cur = bot;
  while (cur != top) {
    cur = rep.parent[cur];
    nodes.push_back(cur);
  }
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

}  // namespace detail

inline Digraph realize(const RootedDirPathRep& rep) {
  validate(rep);
  int n = rep.vertex_count();
  std::vector<std::vector<int>> s_nodes(n), t_nodes(n);
  for (int v = 0; v < n; ++v) {
    s_nodes[v] = detail::path_nodes(rep, rep.vertices[v].s_top, rep.vertices[v].s_bot);
    t_nodes[v] = detail::path_nodes(rep, rep.vertices[v].t_top, rep.vertices[v].t_bot);
  }
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      if (detail::sorted_intersects(s_nodes[v], t_nodes[w])) edges.push_back({v, w});
  return Digraph(n, std::move(edges));
}

inline Digraph realize(const HDigraphRep& rep) {
  validate(rep);
  int n = rep.vertex_count();
  std::vector<std::vector<int>> s_sorted(n), t_sorted(n);
  for (int v = 0; v < n; ++v) {
    s_sorted[v] = rep.sets[v].first;
    t_sorted[v] = rep.sets[v].second;
    std::sort(s_sorted[v].begin(), s_sorted[v].end());
    std::sort(t_sorted[v].begin(), t_sorted[v].end());
  }
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      if (detail::sorted_intersects(s_sorted[v], t_sorted[w])) edges.push_back({v, w});
  return Digraph(n, std::move(edges));
}

// A-side vertices come first (F-node ids), B vertices after them.
inline Digraph realize(const HConvexRep& rep) {
  validate(rep);
  int na = rep.a_count();
  std::vector<Edge> edges;
  for (int b = 0; b < rep.b_count(); ++b) {
    for (int a : rep.b_sets[b].first) edges.push_back({na + b, a});
    for (int a : rep.b_sets[b].second) edges.push_back({a, na + b});
  }
  return Digraph(na + rep.b_count(), std::move(edges));
}

inline bool is_adjusted(const PermutationRep& rep) {
  for (const auto& v : rep.vertices)
    if (v.s_a != v.t_a) return false;
  return true;
}

inline bool is_adjusted(const RootedDirPathRep& rep) {
  for (const auto& v : rep.vertices)
    if (v.s_bot != v.t_bot) return false;
  return true;
}

// Every b-vertex carries a bi-directed edge to some a-vertex.
inline bool is_nice(const HConvexRep& rep) {
  for (const auto& [out, in] : rep.b_sets) {
    auto o = out;
    auto i = in;
    std::sort(o.begin(), o.end());
    std::sort(i.begin(), i.end());
    if (!detail::sorted_intersects(o, i)) return false;
  }
  return true;
}

// The interval-to-segment embedding: S = [a, b] becomes the segment from
// (a, line 1) to (b, line 2), T = [c, d] the segment from (d, line 1) to
// (c, line 2); the realized digraph is unchanged.
inline PermutationRep interval_to_permutation(const IntervalRep& rep) {
  validate(rep);
  PermutationRep out;
  for (const auto& v : rep.vertices) out.vertices.push_back({v.s_lo, v.s_hi, v.t_hi, v.t_lo});
  return out;
}

struct NormalizedHDigraph {
  HDigraphRep rep;
  std::vector<int> anchors;  // per vertex, a node of S_v intersect T_v
};

// Rewrites a reflexive representation so every vertex has its own anchor
// node in S_v cap T_v, pairwise distinct and never a branching node.
// Subdividing {x, y} into x-z-y puts z into every stored set containing both
// x and y; when a vertex needs a private anchor, a fresh subdivision node
// next to its shared anchor is added to its own S and T, which creates no
// new intersections. Anchors on an isolated host vertex cannot be moved
// anywhere; `allow_shared_isolated` lets such twins share the node instead
// of failing (the builders keep those blocks contiguous).
inline NormalizedHDigraph normalize_hdigraph(const HDigraphRep& input,
                                             bool allow_shared_isolated = false) {
  validate(input);
  NormalizedHDigraph result;
  result.rep = input;
  auto& rep = result.rep;
  int n = rep.vertex_count();
  result.anchors.assign(n, -1);

  std::vector<char> claimed;  // grows with F
  auto grow_claimed = [&] { claimed.resize(rep.sub.f.vertex_count(), 0); };
  grow_claimed();

  auto subdivide_tracking = [&](int x, int y) {
    int z = rep.sub.subdivide(x, y);
    for (auto& [s, t] : rep.sets) {
      auto contains = [](const std::vector<int>& set, int node) {
        return std::find(set.begin(), set.end(), node) != set.end();
      };
      if (contains(s, x) && contains(s, y)) s.push_back(z);
      if (contains(t, x) && contains(t, y)) t.push_back(z);
    }
    grow_claimed();
    return z;
  };

  for (int v = 0; v < n; ++v) {
    auto s = rep.sets[v].first;
    auto t = rep.sets[v].second;
    std::sort(s.begin(), s.end());
    std::sort(t.begin(), t.end());
    std::vector<int> common;
    std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(common));
    if (common.empty())
      throw std::invalid_argument("normalize_hdigraph: vertex " + std::to_string(v) +
                                  " has S and T disjoint (representation is not reflexive)");
    int anchor = -1;
    for (int c : common)
      if (!claimed[c] && !rep.sub.is_branching(c)) {
        anchor = c;
        break;
      }
    if (anchor == -1) {
      int base = common[0];
      const auto& nbrs = rep.sub.f.neighbors(base);
      if (nbrs.empty()) {
        if (allow_shared_isolated) {
          result.anchors[v] = base;
          continue;
        }
        throw std::invalid_argument(
            "normalize_hdigraph: isolated branching anchor cannot be relocated (host "
            "component without edges)");
      }
      int z = subdivide_tracking(base, nbrs[0]);
      auto add_once = [z](std::vector<int>& set) {
        if (std::find(set.begin(), set.end(), z) == set.end()) set.push_back(z);
      };
      add_once(rep.sets[v].first);
      add_once(rep.sets[v].second);
      anchor = z;
    }
    claimed[anchor] = 1;
    result.anchors[v] = anchor;
  }
  return result;
}

}  // namespace bimim
