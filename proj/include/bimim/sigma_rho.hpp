#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "bimim/detail/solver_common.hpp"
#include "bimim/digraph.hpp"
#include "bimim/nbhd.hpp"
#include "bimim/problems.hpp"

namespace bimim {

struct SigmaRhoResult {
  bool feasible = false;
  long long value = 0;
  std::vector<int> witness;
};

struct SolveOptions {
  bool want_witness = false;
  // When set, receives the size of every per-node class index the DP built.
  std::vector<size_t>* nec_log = nullptr;
};

namespace detail {

constexpr long long kNoEntry = std::numeric_limits<long long>::min();

inline bool better(Objective obj, long long candidate, long long incumbent) {
  if (incumbent == kNoEntry) return true;
  return obj == Objective::maximize ? candidate > incumbent : candidate < incumbent;
}

struct SigmaRhoNodeState {
  ClassIndex inner;  // classes of subsets of V_t (descriptions over the complement)
  ClassIndex outer;  // classes of subsets of the complement (descriptions over V_t)
  std::vector<long long> tab;  // inner.size() x outer.size(), kNoEntry = unset
  std::vector<uint64_t> back;  // packed (i, j) child classes for traceback

  long long& at(size_t i, size_t k) { return tab[i * outer.size() + k]; }
  long long get(size_t i, size_t k) const { return tab[i * outer.size() + k]; }
};

inline int count_hits(const Digraph& g, int v, Direction dir, const std::vector<int>& set) {
  int hits = 0;
  const auto& nbrs = dir == Direction::out ? g.out_neighbors(v) : g.in_neighbors(v);
  for (int w : nbrs)
    if (std::binary_search(set.begin(), set.end(), w)) ++hits;
  return hits;
}

}  // namespace detail

// Bottom-up table computation over the rooted decomposition. Leaf tables try
// S in {{}, {v}} against a witness of each outside class; note the sigma
// checks count a loop at v, since v is then inside its own solution
// neighborhood. Internal nodes fold child tables over all class triples.
inline SigmaRhoResult solve_sigma_rho(const Digraph& g, const BranchDecomposition& bd,
                                      const SigmaRhoProblem& prob,
                                      const SolveOptions& options = {}) {
  using namespace detail;
  if (g.vertex_count() == 0) {
    SigmaRhoResult r;
    r.feasible = true;
    return r;
  }
  int d = std::max(1, d_value(prob));
  RootedDecomposition rd = root_decomposition(g, bd);
  Objective obj = prob.objective;

  std::vector<SigmaRhoNodeState> state(rd.nodes);
  for (int t : rd.postorder) {
    auto& st = state[t];
    st.inner = ClassIndex(g, rd.below[t], d);
    st.outer = ClassIndex(g, rd.above[t], d);
    if (options.nec_log) {
      options.nec_log->push_back(st.inner.size());
      options.nec_log->push_back(st.outer.size());
    }
    st.tab.assign(st.inner.size() * st.outer.size(), kNoEntry);
    if (options.want_witness) st.back.assign(st.tab.size(), 0);

    int c0 = rd.children[t][0], c1 = rd.children[t][1];
    if (c0 == -1) {
      // Leaf. An unmapped leaf (single-vertex convention) holds the empty
      // set with value 0 against every outside class.
      int v = rd.vertex[t];
      if (v == -1) {
        for (size_t k = 0; k < st.outer.size(); ++k) st.at(0, k) = 0;
        continue;
      }
      std::vector<uint8_t> empty_desc(2 * st.inner.domain().size(), 0);
      uint32_t id_empty = st.inner.find_raw(empty_desc);
      NbhDescription singleton = describe(g, rd.below[t], d, {v});
      uint32_t id_single = st.inner.find(singleton);
      for (size_t k = 0; k < st.outer.size(); ++k) {
        const std::vector<int>& r = st.outer.witness(static_cast<uint32_t>(k));
        int out_hits = count_hits(g, v, Direction::out, r);
        int in_hits = count_hits(g, v, Direction::in, r);
        if (prob.rho_out.contains(out_hits) && prob.rho_in.contains(in_hits)) {
          if (better(obj, 0, st.get(id_empty, k))) {
            st.at(id_empty, k) = 0;
            if (options.want_witness) st.back[id_empty * st.outer.size() + k] = 0;
          }
        }
        int loop = g.has_loop(v) ? 1 : 0;
        if (prob.sigma_out.contains(out_hits + loop) && prob.sigma_in.contains(in_hits + loop)) {
          if (better(obj, 1, st.get(id_single, k))) {
            st.at(id_single, k) = 1;
            if (options.want_witness) st.back[id_single * st.outer.size() + k] = 1;
          }
        }
      }
      continue;
    }

    auto& sa = state[c0];
    auto& sb = state[c1];
    PairCombineMap to_t(sa.inner, sb.inner, st.inner);       // V_a + V_b -> V_t
    PairCombineMap to_abar(sb.inner, st.outer, sa.outer);    // V_b + comp(V_t) -> comp(V_a)
    PairCombineMap to_bbar(sa.inner, st.outer, sb.outer);    // V_a + comp(V_t) -> comp(V_b)

    size_t na = sa.inner.size(), nb = sb.inner.size(), nk = st.outer.size();
    for (size_t i = 0; i < na; ++i)
      for (size_t k = 0; k < nk; ++k) {
        uint32_t kb = to_bbar(i, k);
        for (size_t j = 0; j < nb; ++j) {
          long long vb = sb.get(j, kb);
          if (vb == kNoEntry) continue;
          long long va = sa.get(i, to_abar(j, k));
          if (va == kNoEntry) continue;
          uint32_t ci = to_t(i, j);
          long long candidate = va + vb;
          if (better(obj, candidate, st.get(ci, k))) {
            st.at(ci, k) = candidate;
            if (options.want_witness)
              st.back[ci * st.outer.size() + k] = (static_cast<uint64_t>(i) << 32) | j;
          }
        }
      }
    // Child state is no longer needed once the parent is filled.
    if (!options.want_witness) {
      sa = SigmaRhoNodeState{};
      sb = SigmaRhoNodeState{};
    }
  }

  // The root carries V_t = V(G): one inner class (empty description domain)
  // and one outer class (the empty outside set).
  auto& root_state = state[rd.root];
  SigmaRhoResult result;
  long long answer = root_state.get(0, 0);
  if (answer == kNoEntry) return result;
  result.feasible = true;
  result.value = answer;

  if (options.want_witness) {
    // Walk back down, carrying each node's (inner, outer) entry.
    std::vector<std::pair<int, std::pair<uint32_t, uint32_t>>> stack{{rd.root, {0, 0}}};
    while (!stack.empty()) {
      auto [t, keys] = stack.back();
      stack.pop_back();
      auto [i, k] = keys;
      auto& st = state[t];
      int c0 = rd.children[t][0], c1 = rd.children[t][1];
      if (c0 == -1) {
        if (rd.vertex[t] >= 0 && st.back[i * st.outer.size() + k] == 1)
          result.witness.push_back(rd.vertex[t]);
        continue;
      }
      uint64_t packed = st.back[i * st.outer.size() + k];
      uint32_t ia = static_cast<uint32_t>(packed >> 32);
      uint32_t jb = static_cast<uint32_t>(packed & 0xffffffffu);
      PairCombineMap to_abar(state[c1].inner, st.outer, state[c0].outer);
      PairCombineMap to_bbar(state[c0].inner, st.outer, state[c1].outer);
      stack.push_back({c0, {ia, to_abar(jb, k)}});
      stack.push_back({c1, {jb, to_bbar(ia, k)}});
    }
    std::sort(result.witness.begin(), result.witness.end());
  }
  return result;
}

}  // namespace bimim
