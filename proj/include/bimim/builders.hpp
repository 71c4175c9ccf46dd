#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bimim/cut_width.hpp"
#include "bimim/representations.hpp"

namespace bimim {

struct BuilderReport {
  BranchDecomposition decomposition;
  long long guarantee = 0;
  std::optional<int> measured;  // exact width, filled on request
};

namespace detail {

inline BuilderReport finish_report(const Digraph& g, const std::vector<int>& order,
                                   long long guarantee, bool measure) {
  BuilderReport report;
  report.decomposition = linear_decomposition(order);
  report.guarantee = guarantee;
  if (measure) report.measured = decomposition_width(g, report.decomposition);
  return report;
}

template <typename Key>
std::vector<int> order_by(std::vector<Key> keys) {
  std::vector<int> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return keys[a] < keys[b]; });
  return order;
}

// Global BFS positions over F: components are processed by their smallest
// branching node, each rooted there, neighbors expanded in ascending order.
inline std::vector<int> bfs_positions(const HSubdivision& sub) {
  const auto& f = sub.f;
  std::vector<int> pos(f.vertex_count(), -1);
  int next = 0;
  for (int r = 0; r < sub.branching_count(); ++r) {
    if (pos[r] != -1) continue;
    std::vector<int> queue{r};
    pos[r] = next++;
    for (size_t head = 0; head < queue.size(); ++head)
      for (int y : f.neighbors(queue[head]))
        if (pos[y] == -1) {
          pos[y] = next++;
          queue.push_back(y);
        }
  }
  for (int v = 0; v < f.vertex_count(); ++v)
    if (pos[v] == -1) throw std::logic_error("bfs_positions: subdivision node off every component");
  return pos;
}

}  // namespace detail

// Linear decomposition ordered by the leftmost point of S_v cap T_v.
inline BuilderReport build_reflexive_interval(const IntervalRep& rep, bool measure = false) {
  validate(rep);
  int n = rep.vertex_count();
  if (n == 0) throw std::invalid_argument("build_reflexive_interval: empty representation");
  std::vector<std::pair<long long, int>> keys(n);
  for (int v = 0; v < n; ++v) {
    const auto& iv = rep.vertices[v];
    if (std::max(iv.s_lo, iv.t_lo) > std::min(iv.s_hi, iv.t_hi))
      throw std::invalid_argument("build_reflexive_interval: vertex " + std::to_string(v) +
                                  " has no loop (S and T are disjoint)");
    keys[v] = {std::max(iv.s_lo, iv.t_lo), v};
  }
  return detail::finish_report(realize(rep), detail::order_by(keys), 2, measure);
}

// Linear decomposition ordered by the shared line-1 endpoint.
inline BuilderReport build_adjusted_permutation(const PermutationRep& rep, bool measure = false) {
  int n = rep.vertex_count();
  if (n == 0) throw std::invalid_argument("build_adjusted_permutation: empty representation");
  if (!is_adjusted(rep))
    throw std::invalid_argument("build_adjusted_permutation: representation is not adjusted");
  std::vector<std::pair<long long, int>> keys(n);
  for (int v = 0; v < n; ++v) keys[v] = {rep.vertices[v].s_a, v};
  return detail::finish_report(realize(rep), detail::order_by(keys), 4, measure);
}

namespace detail {

// Mutable rewrite state for the rooted-directed-path builder.
struct RdpathState {
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
  int root = 0;
  std::vector<RootedDirPathRep::Paths> paths;  // per graph vertex

  RootedDirPathRep snapshot() const {
    RootedDirPathRep rep;
    rep.tree_nodes = static_cast<int>(parent.size());
    rep.root = root;
    rep.parent = parent;
    rep.vertices = paths;
    return rep;
  }

  int fresh_node(int par) {
    int id = static_cast<int>(parent.size());
    parent.push_back(par);
    children.emplace_back();
    if (par >= 0) children[par].push_back(id);
    return id;
  }

  // Replace tree edge (t, q) by t - mid - q; returns mid. Implicit (top,
  // bottom) paths reroute through mid automatically.
  int splice(int t, int q) {
    int mid = static_cast<int>(parent.size());
    parent.push_back(t);
    children.emplace_back();
    auto& kids = children[t];
    *std::find(kids.begin(), kids.end(), q) = mid;
    parent[q] = mid;
    children[mid].push_back(q);
    return mid;
  }
};

}  // namespace detail

// Normalizes the representation with the three tree rewrites (split high
// out-degree nodes, separate shared anchors, push anchors off branching
// nodes), then hangs a leaf per vertex at its anchor, takes the underlying
// tree, and smooths it into a subcubic branch decomposition.
inline BuilderReport build_adjusted_rdpath(const RootedDirPathRep& input, bool measure = false,
                                           std::vector<RootedDirPathRep>* trace = nullptr) {
  validate(input);
  if (!is_adjusted(input))
    throw std::invalid_argument("build_adjusted_rdpath: representation is not adjusted");
  int n = input.vertex_count();
  if (n == 0) throw std::invalid_argument("build_adjusted_rdpath: empty representation");
  Digraph g = realize(input);
  if (n == 1) {
    BuilderReport report;
    report.decomposition = linear_decomposition({0});
    report.guarantee = 2;
    if (measure) report.measured = 0;
    return report;
  }

  detail::RdpathState st;
  st.parent = input.parent;
  st.root = input.root;
  st.children.assign(st.parent.size(), {});
  for (size_t x = 0; x < st.parent.size(); ++x)
    if (st.parent[x] >= 0) st.children[st.parent[x]].push_back(static_cast<int>(x));
  for (auto& kids : st.children) std::sort(kids.begin(), kids.end());
  st.paths = input.vertices;
  if (trace) trace->push_back(st.snapshot());

  auto anchor = [&](int v) { return st.paths[v].s_bot; };
  long long rewrite_budget = 8LL * (st.parent.size() + n) + 64;
  while (true) {
    if (--rewrite_budget < 0)
      throw std::logic_error("build_adjusted_rdpath: rewrite loop exceeded its bound");
    // Rewrite 1: a node with three or more children.
    int wide = -1;
    for (size_t x = 0; x < st.children.size(); ++x)
      if (st.children[x].size() >= 3) {
        wide = static_cast<int>(x);
        break;
      }
    if (wide != -1) {
      std::vector<int> kids = st.children[wide];
      std::sort(kids.begin(), kids.end());
      st.children[wide].clear();
      int prev = wide;
      for (size_t k = 0; k < kids.size(); ++k) {
        int p = st.fresh_node(prev);
        st.parent[kids[k]] = p;
        st.children[p].push_back(kids[k]);
        prev = p;
      }
      if (trace) trace->push_back(st.snapshot());
      continue;
    }
    // Rewrite 2: two vertices sharing an anchor; the larger index moves.
    std::vector<int> owner(st.parent.size(), -1);
    int mover = -1;
    for (int v = 0; v < n; ++v) {
      int a = anchor(v);
      if (owner[a] >= 0)
        mover = std::max({mover, v, owner[a]});
      else
        owner[a] = v;
    }
    // Rewrite 3: an anchor sitting on a node with two or more children.
    int pushed = -1;
    if (mover == -1)
      for (int v = 0; v < n; ++v)
        if (st.children[anchor(v)].size() >= 2) {
          pushed = v;
          break;
        }
    int moving = mover != -1 ? mover : pushed;
    if (moving == -1) break;
    int b = anchor(moving);
    if (st.children[b].empty()) st.fresh_node(b);
    int q = *std::min_element(st.children[b].begin(), st.children[b].end());
    int mid = st.splice(b, q);
    st.paths[moving].s_bot = mid;
    st.paths[moving].t_bot = mid;
    if (trace) trace->push_back(st.snapshot());
  }

  // Underlying tree plus one mapped leaf per vertex at its anchor.
  int tree_nodes = static_cast<int>(st.parent.size());
  std::vector<std::vector<int>> adj(tree_nodes + n);
  for (int x = 0; x < tree_nodes; ++x)
    if (st.parent[x] >= 0) {
      adj[x].push_back(st.parent[x]);
      adj[st.parent[x]].push_back(x);
    }
  std::vector<int> vertex_of(tree_nodes + n, -1);
  for (int v = 0; v < n; ++v) {
    int beta = tree_nodes + v;
    vertex_of[beta] = v;
    adj[beta].push_back(anchor(v));
    adj[anchor(v)].push_back(beta);
  }

  // Prune unmapped leaves, smooth degree-2 nodes.
  int total = tree_nodes + n;
  std::vector<char> gone(total, 0);
  bool changed = true;
  auto drop_edge = [&](int x, int y) {
    adj[x].erase(std::find(adj[x].begin(), adj[x].end(), y));
    adj[y].erase(std::find(adj[y].begin(), adj[y].end(), x));
  };
  while (changed) {
    changed = false;
    for (int x = 0; x < total; ++x) {
      if (gone[x] || vertex_of[x] != -1) continue;
      if (adj[x].size() == 1) {
        drop_edge(x, adj[x][0]);
        gone[x] = 1;
        changed = true;
      } else if (adj[x].empty()) {
        gone[x] = 1;
        changed = true;
      } else if (adj[x].size() == 2) {
        int a = adj[x][0], b = adj[x][1];
        drop_edge(x, a);
        drop_edge(x, b);
        adj[a].push_back(b);
        adj[b].push_back(a);
        gone[x] = 1;
        changed = true;
      }
    }
  }

  std::vector<int> label(total, -1);
  int live = 0;
  for (int x = 0; x < total; ++x)
    if (!gone[x]) label[x] = live++;
  BranchDecomposition bd;
  bd.tree_nodes = live;
  bd.leaf_of_vertex.assign(n, -1);
  bd.vertex_of_node.assign(live, -1);
  for (int x = 0; x < total; ++x) {
    if (gone[x]) continue;
    for (int y : adj[x])
      if (x < y) bd.tree_edges.push_back({label[x], label[y]});
    if (vertex_of[x] != -1) {
      bd.vertex_of_node[label[x]] = vertex_of[x];
      bd.leaf_of_vertex[vertex_of[x]] = label[x];
    }
  }
  validate_decomposition(bd, n);

  BuilderReport report;
  report.decomposition = std::move(bd);
  report.guarantee = 2;
  if (measure) report.measured = decomposition_width(g, report.decomposition);
  return report;
}

// Linear decomposition by BFS position of per-vertex anchors on the
// subdivision. For an edgeless host every reflexive vertex set collapses to
// a single node, so blocks of twin vertices are kept contiguous and the
// bound drops to the bidirected-clique width 2.
inline BuilderReport build_reflexive_hdigraph(const HDigraphRep& rep, bool measure = false) {
  int n = rep.vertex_count();
  if (n == 0) throw std::invalid_argument("build_reflexive_hdigraph: empty representation");
  long long m = rep.sub.host.edge_count();
  Digraph g = realize(rep);
  long long guarantee = m >= 1 ? 12 * m : (n >= 2 ? 2 : 0);

  std::vector<std::tuple<int, int, int>> keys(n);
  if (m == 0) {
    for (int v = 0; v < n; ++v) {
      const auto& [s, t] = rep.sets[v];
      std::vector<int> s_sorted(s), t_sorted(t);
      std::sort(s_sorted.begin(), s_sorted.end());
      std::sort(t_sorted.begin(), t_sorted.end());
      std::vector<int> common;
      std::set_intersection(s_sorted.begin(), s_sorted.end(), t_sorted.begin(), t_sorted.end(),
                            std::back_inserter(common));
      if (common.empty())
        throw std::invalid_argument("build_reflexive_hdigraph: vertex " + std::to_string(v) +
                                    " has no loop");
      keys[v] = {common[0], v, 0};
    }
  } else {
    auto normalized = normalize_hdigraph(rep, /*allow_shared_isolated=*/true);
    auto pos = detail::bfs_positions(normalized.rep.sub);
    for (int v = 0; v < n; ++v) keys[v] = {pos[normalized.anchors[v]], v, 0};
  }
  return detail::finish_report(g, detail::order_by(keys), guarantee, measure);
}

// Linear decomposition interleaving the BFS order of F with each b-vertex
// right after its anchor. Anchors are separated on a grown copy of the
// subdivision; the emitted order keeps only the original vertices, which
// can only shrink cut values.
inline BuilderReport build_nice_hconvex(const HConvexRep& input, bool measure = false) {
  validate(input);
  if (!is_nice(input))
    throw std::invalid_argument("build_nice_hconvex: representation is not nice");
  int na = input.a_count(), nb = input.b_count();
  if (na + nb == 0) throw std::invalid_argument("build_nice_hconvex: empty representation");
  long long m = input.sub.host.edge_count();
  Digraph g = realize(input);
  long long guarantee = m >= 1 ? 12 * m : (na + nb >= 2 ? 2 : 0);

  HConvexRep rep = input;
  std::vector<int> anchors(nb, -1);
  std::vector<char> claimed(rep.sub.f.vertex_count(), 0);
  for (int b = 0; b < nb; ++b) {
    auto out = rep.b_sets[b].first;
    auto in = rep.b_sets[b].second;
    std::sort(out.begin(), out.end());
    std::sort(in.begin(), in.end());
    std::vector<int> common;
    std::set_intersection(out.begin(), out.end(), in.begin(), in.end(),
                          std::back_inserter(common));
    int anchor = -1;
    for (int c : common)
      if (!claimed[c] && !rep.sub.is_branching(c)) {
        anchor = c;
        break;
      }
    if (anchor == -1) {
      int base = common[0];
      if (rep.sub.f.neighbors(base).empty()) {
        // Isolated host vertex; anchors may pile up, twins stay adjacent.
        anchors[b] = base;
        continue;
      }
      int nb_node = rep.sub.f.neighbors(base)[0];
      int z = rep.sub.subdivide(base, nb_node);
      auto has = [](const std::vector<int>& set, int node) {
        return std::find(set.begin(), set.end(), node) != set.end();
      };
      for (auto& [o, i] : rep.b_sets) {
        if (has(o, base) && has(o, nb_node)) o.push_back(z);
        if (has(i, base) && has(i, nb_node)) i.push_back(z);
      }
      if (!has(rep.b_sets[b].first, z)) rep.b_sets[b].first.push_back(z);
      if (!has(rep.b_sets[b].second, z)) rep.b_sets[b].second.push_back(z);
      claimed.resize(rep.sub.f.vertex_count(), 0);
      anchor = z;
    }
    claimed[anchor] = 1;
    anchors[b] = anchor;
  }

  auto pos = detail::bfs_positions(rep.sub);
  // Emit original A nodes by BFS position, then each b right after its
  // anchor's position; grown subdivision nodes are skipped.
  std::vector<std::tuple<int, int, int>> keys(na + nb);
  for (int a = 0; a < na; ++a) keys[a] = {pos[a], 0, a};
  for (int b = 0; b < nb; ++b) keys[na + b] = {pos[anchors[b]], 1, b};
  return detail::finish_report(g, detail::order_by(keys), guarantee, measure);
}

}  // namespace bimim
