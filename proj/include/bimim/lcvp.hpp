#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "bimim/detail/solver_common.hpp"
#include "bimim/digraph.hpp"
#include "bimim/nbhd.hpp"
#include "bimim/problems.hpp"
#include "bimim/sigma_rho.hpp"

namespace bimim {

struct LcvpResult {
  bool exists = false;
  std::vector<std::vector<int>> parts;  // witness partition when requested
};

namespace detail {

struct LcvpNodeState {
  ClassIndex inner, outer;
  QClassIndex q_inner, q_outer;
  std::vector<char> tab;       // q_inner.size() x q_outer.size(), boolean
  std::vector<uint64_t> back;  // packed child tuple ids

  char& at(uint64_t i, uint64_t k) { return tab[i * q_outer.size() + k]; }
  char get(uint64_t i, uint64_t k) const { return tab[i * q_outer.size() + k]; }
};

// Tuple combine: apply a base-class pair map coordinatewise.
inline uint64_t tuple_combine(const PairCombineMap& base_map, const QClassIndex& left,
                              const QClassIndex& right, const QClassIndex& target,
                              uint64_t li, uint64_t ri) {
  auto ld = left.digits(li);
  auto rd = right.digits(ri);
  std::vector<uint32_t> td(ld.size());
  for (size_t c = 0; c < ld.size(); ++c) td[c] = base_map(ld[c], rd[c]);
  return target.compose(td);
}

}  // namespace detail

// Boolean analogue of solve_sigma_rho over q-tuples of classes: a table
// entry says whether some q-partition of V_t matches the inner tuple class
// and D_q-dominates V_t together with any member of the outer tuple class.
inline LcvpResult solve_lcvp(const Digraph& g, const BranchDecomposition& bd,
                             const LcvpMatrix& dq, const SolveOptions& options = {}) {
  using namespace detail;
  if (dq.q < 1) throw std::invalid_argument("solve_lcvp: q must be >= 1");
  LcvpResult result;
  if (g.vertex_count() == 0) {
    result.exists = true;
    result.parts.assign(dq.q, {});
    return result;
  }
  int d = std::max(1, d_value(dq));
  int q = dq.q;
  RootedDecomposition rd = root_decomposition(g, bd);

  std::vector<LcvpNodeState> state(rd.nodes);
  for (int t : rd.postorder) {
    auto& st = state[t];
    st.inner = ClassIndex(g, rd.below[t], d);
    st.outer = ClassIndex(g, rd.above[t], d);
    st.q_inner = QClassIndex(&st.inner, q);
    st.q_outer = QClassIndex(&st.outer, q);
    st.tab.assign(st.q_inner.size() * st.q_outer.size(), 0);
    if (options.want_witness) st.back.assign(st.tab.size(), 0);

    int c0 = rd.children[t][0], c1 = rd.children[t][1];
    if (c0 == -1) {
      int v = rd.vertex[t];
      if (v == -1) {
        // Unmapped leaf: the all-empty tuple trivially dominates nothing.
        for (uint64_t k = 0; k < st.q_outer.size(); ++k) st.at(0, k) = 1;
        continue;
      }
      std::vector<uint8_t> empty_desc(2 * st.inner.domain().size(), 0);
      uint32_t id_empty = st.inner.find_raw(empty_desc);
      uint32_t id_single = st.inner.find(describe(g, rd.below[t], d, {v}));
      int loop = g.has_loop(v) ? 1 : 0;
      for (uint64_t k = 0; k < st.q_outer.size(); ++k) {
        auto outer_digits = st.q_outer.digits(k);
        for (int i = 0; i < q; ++i) {
          bool ok = true;
          for (int j = 0; j < q && ok; ++j) {
            const auto& [mu_out, mu_in] = dq.entry(i, j);
            const std::vector<int>& yj = st.outer.witness(outer_digits[j]);
            int out_hits = count_hits(g, v, Direction::out, yj) + (j == i ? loop : 0);
            int in_hits = count_hits(g, v, Direction::in, yj) + (j == i ? loop : 0);
            if (!mu_out.contains(out_hits) || !mu_in.contains(in_hits)) ok = false;
          }
          if (!ok) continue;
          std::vector<uint32_t> digits(q, id_empty);
          digits[i] = id_single;
          uint64_t key = st.q_inner.compose(digits);
          if (!st.get(key, k)) {
            st.at(key, k) = 1;
            if (options.want_witness) st.back[key * st.q_outer.size() + k] = i;
          }
        }
      }
      continue;
    }

    auto& sa = state[c0];
    auto& sb = state[c1];
    PairCombineMap to_t(sa.inner, sb.inner, st.inner);
    PairCombineMap to_abar(sb.inner, st.outer, sa.outer);
    PairCombineMap to_bbar(sa.inner, st.outer, sb.outer);

    uint64_t na = sa.q_inner.size(), nb = sb.q_inner.size(), nk = st.q_outer.size();
    // Tuple-level maps, flattened up front so the triple loop is lookups only.
    std::vector<uint64_t> flat_t(na * nb), flat_abar(nb * nk), flat_bbar(na * nk);
    for (uint64_t i = 0; i < na; ++i)
      for (uint64_t j = 0; j < nb; ++j)
        flat_t[i * nb + j] = tuple_combine(to_t, sa.q_inner, sb.q_inner, st.q_inner, i, j);
    for (uint64_t j = 0; j < nb; ++j)
      for (uint64_t k = 0; k < nk; ++k)
        flat_abar[j * nk + k] =
            tuple_combine(to_abar, sb.q_inner, st.q_outer, sa.q_outer, j, k);
    for (uint64_t i = 0; i < na; ++i)
      for (uint64_t k = 0; k < nk; ++k)
        flat_bbar[i * nk + k] =
            tuple_combine(to_bbar, sa.q_inner, st.q_outer, sb.q_outer, i, k);
    for (uint64_t i = 0; i < na; ++i)
      for (uint64_t k = 0; k < nk; ++k) {
        uint64_t kb = flat_bbar[i * nk + k];
        for (uint64_t j = 0; j < nb; ++j) {
          if (!sb.get(j, kb)) continue;
          if (!sa.get(i, flat_abar[j * nk + k])) continue;
          uint64_t ci = flat_t[i * nb + j];
          if (!st.get(ci, k)) {
            st.at(ci, k) = 1;
            if (options.want_witness) st.back[ci * st.q_outer.size() + k] = (i << 32) | j;
          }
        }
      }
    if (!options.want_witness) {
      state[c0] = LcvpNodeState{};
      state[c1] = LcvpNodeState{};
    }
  }

  auto& root_state = state[rd.root];
  // Single inner tuple class at the root; the outer side is the empty set.
  result.exists = root_state.get(0, 0) != 0;
  if (result.exists && options.want_witness) {
    result.parts.assign(q, {});
    std::vector<std::pair<int, std::pair<uint64_t, uint64_t>>> stack{{rd.root, {0, 0}}};
    while (!stack.empty()) {
      auto [t, keys] = stack.back();
      stack.pop_back();
      auto [i, k] = keys;
      auto& st = state[t];
      int c0 = rd.children[t][0], c1 = rd.children[t][1];
      if (c0 == -1) {
        if (rd.vertex[t] >= 0)
          result.parts[st.back[i * st.q_outer.size() + k]].push_back(rd.vertex[t]);
        continue;
      }
      uint64_t packed = st.back[i * st.q_outer.size() + k];
      uint64_t ia = packed >> 32, jb = packed & 0xffffffffu;
      PairCombineMap to_abar(state[c1].inner, st.outer, state[c0].outer);
      PairCombineMap to_bbar(state[c0].inner, st.outer, state[c1].outer);
      stack.push_back(
          {c0, {ia, tuple_combine(to_abar, state[c1].q_inner, st.q_outer, state[c0].q_outer,
                                  jb, k)}});
      stack.push_back(
          {c1, {jb, tuple_combine(to_bbar, state[c0].q_inner, st.q_outer, state[c1].q_outer,
                                  ia, k)}});
    }
    for (auto& part : result.parts) std::sort(part.begin(), part.end());
  }
  return result;
}

// Oriented k-coloring as the disjunction of directed homomorphisms into all
// 2^(k(k-1)/2) orientations of K_k.
inline bool oriented_k_coloring(const Digraph& g, const BranchDecomposition& bd, int k,
                                const SolveOptions& options = {}) {
  if (k < 1 || k > 5)
    throw std::invalid_argument("oriented_k_coloring: k must be between 1 and 5");
  std::vector<Edge> pairs;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  for (uint32_t mask = 0; mask < (uint32_t{1} << pairs.size()); ++mask) {
    std::vector<Edge> edges;
    for (size_t p = 0; p < pairs.size(); ++p)
      edges.push_back((mask >> p) & 1 ? pairs[p] : Edge{pairs[p].second, pairs[p].first});
    Digraph tournament(k, std::move(edges));
    if (solve_lcvp(g, bd, catalog_h_homomorphism(tournament), options).exists) return true;
  }
  return false;
}

}  // namespace bimim
