#pragma once

#include <stdexcept>
#include <vector>

#include "bimim/digraph.hpp"
#include "bimim/lcvp.hpp"
#include "bimim/problems.hpp"
#include "bimim/sigma_rho.hpp"

namespace bimim {

// Distance-r variants, solved through the r-th power: S is a distance-r
// (Sigma, Rho)-dominating set of G exactly when it is a (Sigma, Rho)-
// dominating set of G^r. Counting follows the neighborhoods of G^r, so a
// vertex counts itself only when G^r has a loop at it; the literal ball
// semantics (v always counts itself) differs exactly there and stays
// available behind `strict_balls` in the checkers.
struct DistanceSigmaRho {
  int r = 1;
  SigmaRhoProblem base;
};

struct DistanceLcvp {
  int r = 1;
  LcvpMatrix base;
};

inline bool distance_dominates(const Digraph& g, const std::vector<int>& s,
                               const SigmaRhoProblem& prob, int r, bool strict_balls = false) {
  if (r < 1) throw std::invalid_argument("distance_dominates: r must be >= 1");
  if (!strict_balls) return dominates(power(g, r), s, prob);

  std::vector<char> in_s(g.vertex_count(), 0);
  for (int v : s) {
    if (v < 0 || v >= g.vertex_count())
      throw std::invalid_argument("distance_dominates: vertex out of range");
    in_s[v] = 1;
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    int out_hits = 0, in_hits = 0;
    for (int w : ball(g, v, r, Direction::out)) out_hits += in_s[w];
    for (int u : ball(g, v, r, Direction::in)) in_hits += in_s[u];
    const FiniteOrCofinite& mu_out = in_s[v] ? prob.sigma_out : prob.rho_out;
    const FiniteOrCofinite& mu_in = in_s[v] ? prob.sigma_in : prob.rho_in;
    if (!mu_out.contains(out_hits) || !mu_in.contains(in_hits)) return false;
  }
  return true;
}

inline SigmaRhoResult solve_distance_sigma_rho(const Digraph& g, const BranchDecomposition& bd,
                                               const SigmaRhoProblem& prob, int r,
                                               const SolveOptions& options = {}) {
  if (r < 1) throw std::invalid_argument("solve_distance_sigma_rho: r must be >= 1");
  return solve_sigma_rho(power(g, r), bd, prob, options);
}

inline bool distance_is_dq_partition(const Digraph& g, const std::vector<std::vector<int>>& parts,
                                     const LcvpMatrix& dq, int r, bool strict_balls = false) {
  if (r < 1) throw std::invalid_argument("distance_is_dq_partition: r must be >= 1");
  if (!strict_balls) return is_dq_partition(power(g, r), parts, dq);

  std::vector<int> part_of(g.vertex_count(), -1);
  for (int i = 0; i < dq.q; ++i)
    for (int v : parts[i]) {
      if (v < 0 || v >= g.vertex_count() || part_of[v] != -1)
        throw std::invalid_argument("distance_is_dq_partition: parts are not a partition");
      part_of[v] = i;
    }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (part_of[v] == -1)
      throw std::invalid_argument("distance_is_dq_partition: parts do not cover V");
  std::vector<int> out_hits(dq.q), in_hits(dq.q);
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::fill(out_hits.begin(), out_hits.end(), 0);
    std::fill(in_hits.begin(), in_hits.end(), 0);
    for (int w : ball(g, v, r, Direction::out)) ++out_hits[part_of[w]];
    for (int u : ball(g, v, r, Direction::in)) ++in_hits[part_of[u]];
    for (int j = 0; j < dq.q; ++j) {
      const auto& [mu_out, mu_in] = dq.entry(part_of[v], j);
      if (!mu_out.contains(out_hits[j]) || !mu_in.contains(in_hits[j])) return false;
    }
  }
  return true;
}

inline LcvpResult solve_distance_lcvp(const Digraph& g, const BranchDecomposition& bd,
                                      const LcvpMatrix& dq, int r,
                                      const SolveOptions& options = {}) {
  if (r < 1) throw std::invalid_argument("solve_distance_lcvp: r must be >= 1");
  return solve_lcvp(power(g, r), bd, dq, options);
}

inline SigmaRhoResult solve_distance_sigma_rho(const Digraph& g, const BranchDecomposition& bd,
                                               const DistanceSigmaRho& dp,
                                               const SolveOptions& options = {}) {
  return solve_distance_sigma_rho(g, bd, dp.base, dp.r, options);
}

inline LcvpResult solve_distance_lcvp(const Digraph& g, const BranchDecomposition& bd,
                                      const DistanceLcvp& dp, const SolveOptions& options = {}) {
  return solve_distance_lcvp(g, bd, dp.base, dp.r, options);
}

}  // namespace bimim
