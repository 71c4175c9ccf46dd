#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "bimim/digraph.hpp"
#include "bimim/finite_or_cofinite.hpp"

namespace bimim {

enum class Objective { minimize, maximize, exists };

// A (sigma+, sigma-, rho+, rho-) vertex-subset problem: members of the
// solution must have in/out solution-neighbor counts in the sigma sets,
// non-members in the rho sets.
struct SigmaRhoProblem {
  FiniteOrCofinite sigma_out, sigma_in, rho_out, rho_in;
  Objective objective = Objective::minimize;
};

inline int d_value(const SigmaRhoProblem& p) {
  return std::max(std::max(d_value(p.sigma_out), d_value(p.sigma_in)),
                  std::max(d_value(p.rho_out), d_value(p.rho_in)));
}

// Definitional check. A loop at v puts v into both N+(v) and N-(v), so a
// member with a loop counts itself.
inline bool dominates(const Digraph& g, const std::vector<int>& s, const SigmaRhoProblem& prob) {
  std::vector<char> in_s(g.vertex_count(), 0);
  for (int v : s) {
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("dominates: vertex out of range");
    in_s[v] = 1;
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    int out_hits = 0, in_hits = 0;
    for (int w : g.out_neighbors(v)) out_hits += in_s[w];
    for (int u : g.in_neighbors(v)) in_hits += in_s[u];
    if (in_s[v]) {
      if (!prob.sigma_out.contains(out_hits) || !prob.sigma_in.contains(in_hits)) return false;
    } else {
      if (!prob.rho_out.contains(out_hits) || !prob.rho_in.contains(in_hits)) return false;
    }
  }
  return true;
}

// q x q matrix of (mu+, mu-) constraints for vertex-partition problems.
struct LcvpMatrix {
  int q = 0;
  // entry(i, j), 0-based, constrains vertices of part i against part j.
  std::vector<std::pair<FiniteOrCofinite, FiniteOrCofinite>> entries;

  const std::pair<FiniteOrCofinite, FiniteOrCofinite>& entry(int i, int j) const {
    return entries[static_cast<size_t>(i) * q + j];
  }
  std::pair<FiniteOrCofinite, FiniteOrCofinite>& entry(int i, int j) {
    return entries[static_cast<size_t>(i) * q + j];
  }

  static LcvpMatrix uniform(int q, FiniteOrCofinite mu_out, FiniteOrCofinite mu_in) {
    LcvpMatrix m;
    m.q = q;
    m.entries.assign(static_cast<size_t>(q) * q, {mu_out, mu_in});
    return m;
  }
};

inline int d_value(const LcvpMatrix& dq) {
  int d = 0;
  for (const auto& [mo, mi] : dq.entries) d = std::max({d, d_value(mo), d_value(mi)});
  return d;
}

// Definitional D_q-partition check; parts must be pairwise disjoint and
// cover V(g) (empty parts allowed).
inline bool is_dq_partition(const Digraph& g, const std::vector<std::vector<int>>& parts,
                            const LcvpMatrix& dq) {
  if (static_cast<int>(parts.size()) != dq.q)
    throw std::invalid_argument("is_dq_partition: part count != q");
  std::vector<int> part_of(g.vertex_count(), -1);
  for (int i = 0; i < dq.q; ++i)
    for (int v : parts[i]) {
      if (v < 0 || v >= g.vertex_count())
        throw std::invalid_argument("is_dq_partition: vertex out of range");
      if (part_of[v] != -1) throw std::invalid_argument("is_dq_partition: parts overlap");
      part_of[v] = i;
    }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (part_of[v] == -1) throw std::invalid_argument("is_dq_partition: parts do not cover V");

  std::vector<int> out_hits(dq.q), in_hits(dq.q);
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::fill(out_hits.begin(), out_hits.end(), 0);
    std::fill(in_hits.begin(), in_hits.end(), 0);
    for (int w : g.out_neighbors(v)) ++out_hits[part_of[w]];
    for (int u : g.in_neighbors(v)) ++in_hits[part_of[u]];
    int i = part_of[v];
    for (int j = 0; j < dq.q; ++j) {
      const auto& [mo, mi] = dq.entry(i, j);
      if (!mo.contains(out_hits[j]) || !mi.contains(in_hits[j])) return false;
    }
  }
  return true;
}

// Named problem catalog.
inline SigmaRhoProblem catalog_problem(const std::string& name, int k = -1, int l = -1) {
  const auto N = FiniteOrCofinite::all();
  const auto Npos = FiniteOrCofinite::all_except({0});
  const auto zero = FiniteOrCofinite::finite({0});
  const auto one = FiniteOrCofinite::finite({1});
  auto need = [&](int value, const char* param) {
    if (value < 0)
      throw std::invalid_argument("catalog_problem: " + name + " needs parameter " + param);
    return value;
  };
  if (name == "kernel")
    return {zero, zero, Npos, N, Objective::minimize};
  if (name == "kl-out-kernel") {
    need(k, "k");
    need(l, "l");
    std::vector<int> upto(k);
    for (int i = 0; i < k; ++i) upto[i] = i;
    return {FiniteOrCofinite(FiniteOrCofinite::Mode::finite, upto), zero,
            FiniteOrCofinite::at_least(l), N, Objective::minimize};
  }
  if (name == "dominating-set")
    return {N, N, N, Npos, Objective::minimize};
  if (name == "independent-dominating-set")
    return {zero, zero, N, Npos, Objective::minimize};
  if (name == "in-dominating-set")
    return {N, N, Npos, N, Objective::minimize};
  if (name == "twin-dominating-set")
    return {N, N, Npos, Npos, Objective::minimize};
  if (name == "k-dominating-set")
    return {N, N, N, FiniteOrCofinite::at_least(need(k, "k")), Objective::minimize};
  if (name == "total-dominating-set")
    return {N, Npos, N, Npos, Objective::minimize};
  if (name == "efficient-dominating-set")
    return {zero, zero, N, one, Objective::minimize};
  if (name == "efficient-total-dominating-set")
    return {N, one, N, one, Objective::minimize};
  if (name == "k-regular-induced-subdigraph") {
    need(k, "k");
    return {FiniteOrCofinite::finite({k}), FiniteOrCofinite::finite({k}), N, N,
            Objective::maximize};
  }
  throw std::invalid_argument("catalog_problem: unknown problem '" + name + "'");
}

// Homomorphism into H: edges from part i to part j are legal iff (i, j) is
// an H-edge. The out component of entry (i, j) covers edges i -> j; the in
// component covers edges j -> i and is therefore keyed on (j, i).
inline LcvpMatrix catalog_h_homomorphism(const Digraph& h) {
  LcvpMatrix m;
  m.q = h.vertex_count();
  const auto N = FiniteOrCofinite::all();
  const auto zero = FiniteOrCofinite::finite({0});
  for (int i = 0; i < m.q; ++i)
    for (int j = 0; j < m.q; ++j)
      m.entries.push_back({h.has_edge(i, j) ? N : zero, h.has_edge(j, i) ? N : zero});
  return m;
}

inline LcvpMatrix catalog_exists_sigma_rho(const SigmaRhoProblem& p) {
  const auto N = FiniteOrCofinite::all();
  LcvpMatrix m;
  m.q = 2;
  m.entries = {{p.sigma_out, p.sigma_in}, {N, N}, {p.rho_out, p.rho_in}, {N, N}};
  return m;
}

inline LcvpMatrix catalog_lcvp(const std::string& name, int k1 = -1, int k2 = -1) {
  const auto N = FiniteOrCofinite::all();
  auto need = [&](int value, const char* param) {
    if (value < 0)
      throw std::invalid_argument("catalog_lcvp: " + name + " needs parameter " + param);
    return value;
  };
  if (name == "2-out-coloring")
    return LcvpMatrix::uniform(2, FiniteOrCofinite::all_except({0}), N);
  if (name == "out-in-degree-partition") {
    auto m = LcvpMatrix::uniform(2, N, N);
    m.entry(0, 0) = {FiniteOrCofinite::at_least(need(k1, "k1")), N};
    m.entry(1, 1) = {N, FiniteOrCofinite::at_least(need(k2, "k2"))};
    return m;
  }
  if (name == "out-out-degree-partition") {
    auto m = LcvpMatrix::uniform(2, N, N);
    m.entry(0, 0) = {FiniteOrCofinite::at_least(need(k1, "k1")), N};
    m.entry(1, 1) = {FiniteOrCofinite::at_least(need(k2, "k2")), N};
    return m;
  }
  if (name == "max-out-degree-partition") {
    auto m = LcvpMatrix::uniform(2, N, N);
    m.entry(0, 0) = {FiniteOrCofinite::at_most(need(k1, "k1")), N};
    m.entry(1, 1) = {FiniteOrCofinite::at_most(need(k2, "k2")), N};
    return m;
  }
  if (name == "out-in-bipartite-partition") {
    auto m = LcvpMatrix::uniform(2, N, N);
    m.entry(0, 1) = {FiniteOrCofinite::at_least(need(k1, "k1")), N};
    m.entry(1, 0) = {N, FiniteOrCofinite::at_least(need(k2, "k2"))};
    return m;
  }
  if (name == "out-out-bipartite-partition") {
    auto m = LcvpMatrix::uniform(2, N, N);
    m.entry(0, 1) = {FiniteOrCofinite::at_least(need(k1, "k1")), N};
    m.entry(1, 0) = {FiniteOrCofinite::at_least(need(k2, "k2")), N};
    return m;
  }
  throw std::invalid_argument("catalog_lcvp: unknown problem '" + name + "'");
}

}  // namespace bimim
