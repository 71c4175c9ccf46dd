#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "bimim/digraph.hpp"
#include "bimim/problems.hpp"

namespace bimim::oracle {

struct Budget {
  int max_vertices = 8;  // subset / assignment search
  int max_leaves = 6;    // decomposition enumeration, (2n-5)!! trees
  std::chrono::milliseconds timeout{0};  // 0 = unlimited
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct SigmaRhoResult {
  bool feasible = false;
  long long value = 0;
  std::vector<int> witness;
};

namespace detail {

class Deadline {
 public:
  explicit Deadline(std::chrono::milliseconds limit)
      : limited_(limit.count() > 0), end_(std::chrono::steady_clock::now() + limit) {}
  void check() const {
    if (limited_ && std::chrono::steady_clock::now() > end_)
      throw BudgetExceeded("oracle: timeout exceeded");
  }

 private:
  bool limited_;
  std::chrono::steady_clock::time_point end_;
};

// Recount of the domination predicate with nothing but has_edge probes, kept
// separate from the checker in problems.hpp so the two can vouch for each
// other.
inline bool recount_dominates(const Digraph& g, const std::vector<char>& in_s,
                              const SigmaRhoProblem& prob) {
  int n = g.vertex_count();
  for (int v = 0; v < n; ++v) {
    int out_hits = 0, in_hits = 0;
    for (int w = 0; w < n; ++w) {
      if (in_s[w] && g.has_edge(v, w)) ++out_hits;
      if (in_s[w] && g.has_edge(w, v)) ++in_hits;
    }
    const FiniteOrCofinite& mu_out = in_s[v] ? prob.sigma_out : prob.rho_out;
    const FiniteOrCofinite& mu_in = in_s[v] ? prob.sigma_in : prob.rho_in;
    if (!mu_out.contains(out_hits) || !mu_in.contains(in_hits)) return false;
  }
  return true;
}

inline bool recount_partition(const Digraph& g, const std::vector<int>& part_of,
                              const LcvpMatrix& dq) {
  int n = g.vertex_count();
  for (int v = 0; v < n; ++v)
    for (int j = 0; j < dq.q; ++j) {
      int out_hits = 0, in_hits = 0;
      for (int w = 0; w < n; ++w) {
        if (part_of[w] != j) continue;
        if (g.has_edge(v, w)) ++out_hits;
        if (g.has_edge(w, v)) ++in_hits;
      }
      const auto& [mu_out, mu_in] = dq.entry(part_of[v], j);
      if (!mu_out.contains(out_hits) || !mu_in.contains(in_hits)) return false;
    }
  return true;
}

// Brute-force nu of the cross edges from side a to its complement: every
// edge subset is tested for being an induced matching.
inline int brute_nu(const Digraph& g, const std::vector<char>& in_a) {
  std::vector<Edge> cross;
  for (auto [u, v] : g.edges())
    if (in_a[u] && !in_a[v]) cross.push_back({u, v});
  int m = static_cast<int>(cross.size());
  if (m > 22) throw BudgetExceeded("oracle: too many cross edges for brute nu");
  int best = 0;
  for (uint32_t mask = 1; mask < (uint32_t{1} << m); ++mask) {
    int size = __builtin_popcount(mask);
    if (size <= best) continue;
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      if (!((mask >> i) & 1)) continue;
      for (int j = i + 1; j < m && ok; ++j) {
        if (!((mask >> j) & 1)) continue;
        auto [a1, b1] = cross[i];
        auto [a2, b2] = cross[j];
        if (a1 == a2 || b1 == b2 || g.has_edge(a1, b2) || g.has_edge(a2, b1)) ok = false;
      }
    }
    if (ok) best = size;
  }
  return best;
}

// Unlabeled-internal-node tree as an edge list; leaves carry ids 0..n-1.
struct LeafTree {
  std::vector<Edge> edges;
  int nodes = 0;
};

template <typename F>
void enumerate_leaf_trees(int n, F&& visit) {
  // Leaf ids are 0..n-1 up front; internal nodes are allocated from n.
  LeafTree base;
  base.nodes = std::max(n, 1);
  if (n >= 2) base.edges.push_back({0, 1});
  std::vector<LeafTree> current{base};
  for (int leaf = 2; leaf < n; ++leaf) {
    std::vector<LeafTree> next;
    for (const auto& t : current)
      for (size_t e = 0; e < t.edges.size(); ++e) {
        LeafTree grown = t;
        auto [a, b] = grown.edges[e];
        int mid = grown.nodes++;
        grown.edges[e] = {a, mid};
        grown.edges.push_back({mid, b});
        grown.edges.push_back({mid, leaf});
        next.push_back(std::move(grown));
      }
    current = std::move(next);
  }
  for (const auto& t : current) visit(t);
}

inline int tree_width_bimim(const Digraph& g, const LeafTree& t) {
  int n = g.vertex_count();
  std::vector<std::vector<int>> adj(t.nodes);
  for (size_t e = 0; e < t.edges.size(); ++e) {
    adj[t.edges[e].first].push_back(static_cast<int>(e));
    adj[t.edges[e].second].push_back(static_cast<int>(e));
  }
  int width = 0;
  for (size_t cut_edge = 0; cut_edge < t.edges.size(); ++cut_edge) {
    std::vector<char> in_a(n, 0), seen(t.nodes, 0);
    std::vector<int> stack{t.edges[cut_edge].first};
    seen[t.edges[cut_edge].first] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (x < n) in_a[x] = 1;
      for (int e : adj[x]) {
        if (e == static_cast<int>(cut_edge)) continue;
        int y = t.edges[e].first == x ? t.edges[e].second : t.edges[e].first;
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    std::vector<char> in_b(n, 0);
    for (int v = 0; v < n; ++v) in_b[v] = !in_a[v];
    width = std::max(width, brute_nu(g, in_a) + brute_nu(g, in_b));
    if (width > 2 * n) break;  // cannot happen; sanity stop
  }
  return width;
}

}  // namespace detail

// Exhaustive optimum over all 2^n subsets.
inline SigmaRhoResult brute_sigma_rho(const Digraph& g, const SigmaRhoProblem& prob,
                                      const Budget& budget = {}) {
  int n = g.vertex_count();
  if (n > budget.max_vertices)
    throw BudgetExceeded("brute_sigma_rho: " + std::to_string(n) + " vertices exceeds budget " +
                         std::to_string(budget.max_vertices));
  detail::Deadline deadline(budget.timeout);
  SigmaRhoResult best;
  for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
    if ((mask & 0xfff) == 0) deadline.check();
    std::vector<char> in_s(n, 0);
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if ((mask >> v) & 1) {
        in_s[v] = 1;
        members.push_back(v);
      }
    bool ok = detail::recount_dominates(g, in_s, prob);
    if (ok != dominates(g, members, prob))
      throw std::logic_error("oracle: dominates disagrees with recount");
    if (!ok) continue;
    long long size = static_cast<long long>(members.size());
    bool better = !best.feasible ||
                  (prob.objective == Objective::maximize ? size > best.value : size < best.value);
    if (prob.objective == Objective::exists) better = !best.feasible;
    if (better) {
      best.feasible = true;
      best.value = size;
      best.witness = std::move(members);
    }
  }
  return best;
}

// Exhaustive search over all q^n part assignments.
inline bool brute_lcvp(const Digraph& g, const LcvpMatrix& dq, const Budget& budget = {},
                       std::vector<std::vector<int>>* witness = nullptr) {
  int n = g.vertex_count();
  double assignments = 1;
  for (int i = 0; i < n; ++i) assignments *= dq.q;
  if (n > budget.max_vertices || assignments > 2e7)
    throw BudgetExceeded("brute_lcvp: assignment space exceeds budget");
  detail::Deadline deadline(budget.timeout);
  std::vector<int> part_of(n, 0);
  uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= dq.q;
  for (uint64_t code = 0; code < total; ++code) {
    if ((code & 0xfff) == 0) deadline.check();
    uint64_t c = code;
    for (int v = 0; v < n; ++v) {
      part_of[v] = static_cast<int>(c % dq.q);
      c /= dq.q;
    }
    bool ok = detail::recount_partition(g, part_of, dq);
    std::vector<std::vector<int>> parts(dq.q);
    for (int v = 0; v < n; ++v) parts[part_of[v]].push_back(v);
    if (ok != is_dq_partition(g, parts, dq))
      throw std::logic_error("oracle: is_dq_partition disagrees with recount");
    if (ok) {
      if (witness) *witness = std::move(parts);
      return true;
    }
  }
  return false;
}

// Minimum bi-mim-width over every leaf-labeled subcubic tree, grown by
// inserting one leaf into every edge of every smaller tree.
inline int exact_bimimwidth(const Digraph& g, const Budget& budget = {}) {
  int n = g.vertex_count();
  if (n > budget.max_leaves)
    throw BudgetExceeded("exact_bimimwidth: " + std::to_string(n) + " leaves exceeds budget " +
                         std::to_string(budget.max_leaves));
  if (n <= 1) return 0;
  detail::Deadline deadline(budget.timeout);
  int best = -1;
  detail::enumerate_leaf_trees(n, [&](const detail::LeafTree& t) {
    deadline.check();
    int w = detail::tree_width_bimim(g, t);
    if (best < 0 || w < best) best = w;
  });
  return best;
}

// Exact mim-width of an undirected graph, via the per-cut identity with the
// biorientation: nu of the undirected cut graph equals nu of either directed
// side of the bioriented cut.
inline int exact_mimwidth(const UndirectedGraph& h, const Budget& budget = {}) {
  Digraph bior = biorientation(h);
  int n = h.vertex_count();
  if (n > budget.max_leaves) throw BudgetExceeded("exact_mimwidth: budget exceeded");
  if (n <= 1) return 0;
  detail::Deadline deadline(budget.timeout);
  int best = -1;
  detail::enumerate_leaf_trees(n, [&](const detail::LeafTree& t) {
    deadline.check();
    std::vector<std::vector<int>> adj(t.nodes);
    for (size_t e = 0; e < t.edges.size(); ++e) {
      adj[t.edges[e].first].push_back(static_cast<int>(e));
      adj[t.edges[e].second].push_back(static_cast<int>(e));
    }
    int width = 0;
    for (size_t cut_edge = 0; cut_edge < t.edges.size(); ++cut_edge) {
      std::vector<char> in_a(n, 0), seen(t.nodes, 0);
      std::vector<int> stack{t.edges[cut_edge].first};
      seen[t.edges[cut_edge].first] = 1;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (x < n) in_a[x] = 1;
        for (int e : adj[x]) {
          if (e == static_cast<int>(cut_edge)) continue;
          int y = t.edges[e].first == x ? t.edges[e].second : t.edges[e].first;
          if (!seen[y]) {
            seen[y] = 1;
            stack.push_back(y);
          }
        }
      }
      width = std::max(width, detail::brute_nu(bior, in_a));
    }
    if (best < 0 || width < best) best = width;
  });
  return best;
}

// Distinct capped neighborhood-count vectors over all subsets of a.
inline int brute_nec(const Digraph& g, const std::vector<int>& a, int d,
                     const Budget& budget = {}) {
  int n = g.vertex_count();
  std::vector<int> side(a);
  std::sort(side.begin(), side.end());
  side.erase(std::unique(side.begin(), side.end()), side.end());
  int k = static_cast<int>(side.size());
  if (k > budget.max_vertices + 4)
    throw BudgetExceeded("brute_nec: side too large for exhaustive enumeration");
  detail::Deadline deadline(budget.timeout);
  std::vector<char> in_a(n, 0);
  for (int v : side) in_a[v] = 1;
  std::unordered_set<std::string> seen;
  for (uint32_t mask = 0; mask < (uint32_t{1} << k); ++mask) {
    if ((mask & 0xfff) == 0) deadline.check();
    std::vector<char> in_x(n, 0);
    for (int i = 0; i < k; ++i)
      if ((mask >> i) & 1) in_x[side[i]] = 1;
    std::string key;
    for (int u = 0; u < n; ++u) {
      if (in_a[u]) continue;
      int from_x = 0, to_x = 0;
      for (int w = 0; w < n; ++w) {
        if (in_x[w] && g.has_edge(w, u)) ++from_x;
        if (in_x[w] && g.has_edge(u, w)) ++to_x;
      }
      key.push_back(static_cast<char>(std::min(d, from_x)));
      key.push_back(static_cast<char>(std::min(d, to_x)));
    }
    seen.insert(key);
  }
  return static_cast<int>(seen.size());
}

}  // namespace bimim::oracle
