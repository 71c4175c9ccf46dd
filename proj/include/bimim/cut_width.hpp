#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

#include "bimim/branch_decomposition.hpp"
#include "bimim/digraph.hpp"

namespace bimim {

// One side of a vertex bipartition (A, complement-of-A) of a digraph.
struct Cut {
  std::vector<int> a;
};

struct CutValues {
  int mim_plus = 0;   // nu(G[A -> comp])
  int mim_minus = 0;  // nu(G[comp -> A])
  int cutrk_plus = -1;
  int cutrk_minus = -1;

  int bimim() const { return mim_plus + mim_minus; }
  int bicutrk() const { return cutrk_plus + cutrk_minus; }
  bool has_rank() const { return cutrk_plus >= 0; }
};

enum class WidthMeasure { bimim, birank };

// Bipartite digraph on a ∪ b keeping exactly the edges of g from a to b.
// Vertices are relabeled: a in given order first, then b.
inline Digraph directed_bipartite(const Digraph& g, const std::vector<int>& a,
                                  const std::vector<int>& b) {
  std::vector<int> label(g.vertex_count(), -1);
  int next = 0;
  for (int v : a) {
    if (v < 0 || v >= g.vertex_count() || label[v] != -1)
      throw std::invalid_argument("directed_bipartite: bad A side");
    label[v] = next++;
  }
  int b_start = next;
  for (int v : b) {
    if (v < 0 || v >= g.vertex_count())
      throw std::invalid_argument("directed_bipartite: bad B side");
    if (label[v] != -1) throw std::invalid_argument("directed_bipartite: sides overlap");
    label[v] = next++;
  }
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (label[u] != -1 && label[u] < b_start && label[v] >= b_start)
      edges.emplace_back(label[u], label[v]);
  return Digraph(next, std::move(edges));
}

namespace detail {

// Exact maximum induced matching over a list of cross edges of `g` (all from
// the A side to the B side). Iterative deepening: test for an induced
// matching of size k = 1, 2, ... by backtracking over edges with conflict
// pruning; candidate edges are pre-sorted by endpoint degree sum.
class InducedMatchingSearch {
 public:
  InducedMatchingSearch(const Digraph& g, std::vector<Edge> cross) : edges_(std::move(cross)) {
    int m = static_cast<int>(edges_.size());
    std::vector<int> deg_a(g.vertex_count(), 0), deg_b(g.vertex_count(), 0);
    for (auto [u, v] : edges_) {
      ++deg_a[u];
      ++deg_b[v];
    }
    std::stable_sort(edges_.begin(), edges_.end(), [&](const Edge& e, const Edge& f) {
      return deg_a[e.first] + deg_b[e.second] < deg_a[f.first] + deg_b[f.second];
    });
    compat_.assign(m, Bitset(m));
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (!conflict(g, edges_[i], edges_[j])) {
          compat_[i].set(j);
          compat_[j].set(i);
        }
  }

  int solve() {
    int m = static_cast<int>(edges_.size());
    if (m == 0) return 0;
    int k = 1;
    Bitset all(m);
    for (int i = 0; i < m; ++i) all.set(i);
    while (k + 1 <= m && exists(all, 0, k + 1)) ++k;
    return k;
  }

 private:
  static bool conflict(const Digraph& g, const Edge& e, const Edge& f) {
    return e.first == f.first || e.second == f.second || g.has_edge(e.first, f.second) ||
           g.has_edge(f.first, e.second);
  }

  bool exists(const Bitset& candidates, int from, int need) {
    if (need == 0) return true;
    if (candidates.count() < need) return false;
    for (int i = candidates.next(from); i != -1; i = candidates.next(i + 1)) {
      if (exists(candidates & compat_[i], i + 1, need - 1)) return true;
    }
    return false;
  }

  std::vector<Edge> edges_;
  std::vector<Bitset> compat_;
};

inline std::vector<Edge> cross_edges(const Digraph& g, const Bitset& a) {
  std::vector<Edge> cross;
  for (auto [u, v] : g.edges())
    if (a.test(u) && !a.test(v)) cross.emplace_back(u, v);
  return cross;
}

// GF(2) rank of the cross-edge matrix by bit-parallel elimination. Rows are
// the A-side vertices, columns the complement side.
inline int gf2_cut_rank(const Digraph& g, const Bitset& a) {
  int n = g.vertex_count();
  std::vector<int> col(n, -1);
  int cols = 0;
  for (int v = 0; v < n; ++v)
    if (!a.test(v)) col[v] = cols++;
  std::vector<Bitset> pivots;
  Bitset row(cols);
  for (int u = a.next(0); u != -1; u = a.next(u + 1)) {
    row.clear();
    for (int v : g.out_neighbors(u))
      if (col[v] >= 0) row.set(col[v]);
    for (const auto& p : pivots) {
      int lead = p.next(0);
      if (row.test(lead)) row ^= p;
    }
    if (row.any()) {
      pivots.push_back(row);
      std::sort(pivots.begin(), pivots.end(),
                [](const Bitset& x, const Bitset& y) { return x.next(0) < y.next(0); });
    }
  }
  return static_cast<int>(pivots.size());
}

inline Bitset to_bitset(const std::vector<int>& verts, int n) {
  Bitset b(n);
  for (int v : verts) {
    if (v < 0 || v >= n) throw std::invalid_argument("vertex set entry out of range");
    b.set(v);
  }
  return b;
}

inline Bitset complement(const Bitset& a) {
  Bitset b(a.capacity());
  for (int v = 0; v < a.capacity(); ++v)
    if (!a.test(v)) b.set(v);
  return b;
}

inline CutValues cut_values_bits(const Digraph& g, const Bitset& a, bool with_rank) {
  Bitset b = complement(a);
  CutValues cv;
  cv.mim_plus = InducedMatchingSearch(g, cross_edges(g, a)).solve();
  cv.mim_minus = InducedMatchingSearch(g, cross_edges(g, b)).solve();
  if (with_rank) {
    cv.cutrk_plus = gf2_cut_rank(g, a);
    cv.cutrk_minus = gf2_cut_rank(g, b);
  }
  return cv;
}

}  // namespace detail

// Exact nu of a bipartite digraph whose edges all run from side a to side b.
inline int max_induced_matching(const Digraph& g, const std::vector<int>& a,
                                const std::vector<int>& b) {
  auto bits_a = detail::to_bitset(a, g.vertex_count());
  auto bits_b = detail::to_bitset(b, g.vertex_count());
  for (auto [u, v] : g.edges())
    if (!bits_a.test(u) || !bits_b.test(v))
      throw std::invalid_argument("max_induced_matching: edge does not run from a to b");
  return detail::InducedMatchingSearch(g, g.edges()).solve();
}

inline CutValues cut_values(const Digraph& g, const Cut& cut, bool with_rank = false) {
  return detail::cut_values_bits(g, detail::to_bitset(cut.a, g.vertex_count()), with_rank);
}

// Max over the tree edges of the chosen cut measure. Cut evaluations are
// independent; threads > 1 splits them across workers and merges by max.
inline int decomposition_width(const Digraph& g, const BranchDecomposition& bd,
                               WidthMeasure measure = WidthMeasure::bimim, int threads = 1) {
  auto cuts = decomposition_cuts(g, bd);
  auto eval = [&](const detail::Bitset& a) {
    if (measure == WidthMeasure::bimim) {
      auto cv = detail::cut_values_bits(g, a, false);
      return cv.bimim();
    }
    return detail::gf2_cut_rank(g, a) + detail::gf2_cut_rank(g, detail::complement(a));
  };
  if (threads <= 1 || cuts.size() < 2) {
    int best = 0;
    for (const auto& a : cuts) best = std::max(best, eval(a));
    return best;
  }
  int workers = std::min<int>(threads, static_cast<int>(cuts.size()));
  std::vector<int> partial(workers, 0);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (size_t i = w; i < cuts.size(); i += workers)
        partial[w] = std::max(partial[w], eval(cuts[i]));
    });
  for (auto& t : pool) t.join();
  return *std::max_element(partial.begin(), partial.end());
}

}  // namespace bimim
