#include <doctest.h>

#include <random>

#include "bimim/cut_width.hpp"
#include "test_support.hpp"

using namespace bimim;

namespace {

// Reference nu: all edge subsets, checked by definition.
int subset_nu(const Digraph& g, const std::vector<Edge>& cross) {
  int m = static_cast<int>(cross.size());
  REQUIRE(m <= 14);
  int best = 0;
  for (uint32_t mask = 1; mask < (uint32_t{1} << m); ++mask) {
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
    if (ok) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

int gf2_rank_reference(const Digraph& g, const std::vector<int>& a) {
  // Dense elimination over bool rows.
  std::vector<char> in_a(g.vertex_count(), 0);
  for (int v : a) in_a[v] = 1;
  std::vector<std::vector<char>> rows;
  for (int u : a) {
    std::vector<char> row;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (!in_a[v]) row.push_back(g.has_edge(u, v) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  int rank = 0;
  size_t cols = rows.empty() ? 0 : rows[0].size();
  for (size_t c = 0; c < cols; ++c) {
    int pivot = -1;
    for (size_t r = rank; r < rows.size(); ++r)
      if (rows[r][c]) {
        pivot = static_cast<int>(r);
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t r = 0; r < rows.size(); ++r)
      if (static_cast<int>(r) != rank && rows[r][c])
        for (size_t cc = 0; cc < cols; ++cc) rows[r][cc] ^= rows[rank][cc];
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("directed_bipartite keeps only a-to-b edges") {
  Digraph g(2, {{0, 1}, {1, 0}});
  auto b = directed_bipartite(g, {0}, {1});
  CHECK(b.edge_count() == 1);
  CHECK(b.has_edge(0, 1));

  CHECK(directed_bipartite(g, {0}, {}).edge_count() == 0);
  CHECK_THROWS_AS(directed_bipartite(g, {0}, {0}), std::invalid_argument);

  auto c4 = biorientation(testsupport::undirected_cycle(4));
  auto split = directed_bipartite(c4, {0, 2}, {1, 3});
  CHECK(split.edge_count() == 4);
}

TEST_CASE("max_induced_matching small cases") {
  // Two disjoint edges form an induced matching of size two.
  Digraph two(4, {{0, 2}, {1, 3}});
  CHECK(max_induced_matching(two, {0, 1}, {2, 3}) == 2);
  // A joining edge collapses it to one.
  Digraph joined(4, {{0, 2}, {1, 3}, {0, 3}});
  CHECK(max_induced_matching(joined, {0, 1}, {2, 3}) == 1);
  Digraph edgeless(4, {});
  CHECK(max_induced_matching(edgeless, {0, 1}, {2, 3}) == 0);
  Digraph backwards(2, {{1, 0}});
  CHECK_THROWS_AS(max_induced_matching(backwards, {0}, {1}), std::invalid_argument);
}

TEST_CASE("max_induced_matching matches subset enumeration") {
  std::mt19937 rng(21);
  for (int iter = 0; iter < 200; ++iter) {
    int n = 2 + iter % 8;
    auto g = testsupport::random_digraph(rng, n, 0.3);
    int split = 1 + static_cast<int>(rng() % (n - 1));
    detail::Bitset a(n);
    for (int v = 0; v < split; ++v) a.set(v);
    auto cross = detail::cross_edges(g, a);
    if (cross.size() > 12) continue;
    int fast = detail::InducedMatchingSearch(g, cross).solve();
    CHECK(fast == subset_nu(g, cross));
  }
}

TEST_CASE("cut_values on tiny cuts") {
  auto edge = biorientation(UndirectedGraph(2, {{0, 1}}));
  auto cv = cut_values(edge, Cut{{0}});
  CHECK(cv.mim_plus == 1);
  CHECK(cv.mim_minus == 1);
  CHECK(cv.bimim() == 2);

  auto empty_side = cut_values(edge, Cut{{}});
  CHECK(empty_side.bimim() == 0);

  auto p4 = biorientation(testsupport::undirected_path(4));
  CHECK(cut_values(p4, Cut{{0, 1}}).bimim() == 2);
}

TEST_CASE("rank dominates matching per cut") {
  std::mt19937 rng(22);
  for (int iter = 0; iter < 120; ++iter) {
    int n = 2 + iter % 8;
    auto g = testsupport::random_digraph(rng, n, 0.3);
    std::vector<int> a;
    for (int v = 0; v < n; ++v)
      if (rng() & 1) a.push_back(v);
    auto cv = cut_values(g, Cut{a}, true);
    CHECK(cv.mim_plus <= cv.cutrk_plus);
    CHECK(cv.mim_minus <= cv.cutrk_minus);
    CHECK(cv.bimim() == cv.mim_plus + cv.mim_minus);
    CHECK(cv.cutrk_plus == gf2_rank_reference(g, a));
  }
}

TEST_CASE("linear_decomposition shapes") {
  auto two = linear_decomposition({0, 1});
  CHECK(two.tree_nodes == 2);
  validate_decomposition(two, 2);

  auto four = linear_decomposition({0, 1, 2, 3});
  CHECK(four.tree_nodes == 6);
  validate_decomposition(four, 4);

  CHECK_THROWS_AS(linear_decomposition({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("linear_decomposition induces exactly the prefix cuts") {
  std::mt19937 rng(23);
  for (int n : {2, 3, 5, 7}) {
    auto order = testsupport::random_permutation(rng, n);
    auto bd = linear_decomposition(order);
    Digraph g(n, {});
    auto cuts = decomposition_cuts(g, bd);
    std::vector<std::vector<int>> prefixes;
    for (const auto& cut : cuts) {
      auto side = cut.to_vector();
      if (static_cast<int>(side.size()) > n / 2) {
        // Orientation of the reported side is not fixed; normalize.
        detail::Bitset flip(n);
        for (int v = 0; v < n; ++v)
          if (!cut.test(v)) flip.set(v);
        side = flip.to_vector();
      }
      prefixes.push_back(side);
    }
    // Every order prefix (and nothing else, up to complement) appears.
    for (int i = 0; i + 1 < n; ++i) {
      std::vector<int> prefix(order.begin(), order.begin() + i + 1);
      std::sort(prefix.begin(), prefix.end());
      std::vector<int> suffix;
      for (int j = i + 1; j < n; ++j) suffix.push_back(order[j]);
      std::sort(suffix.begin(), suffix.end());
      bool found = false;
      for (const auto& side : prefixes)
        if (side == prefix || side == suffix) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("decomposition_width small digraphs") {
  Digraph one_edge(2, {{0, 1}});
  CHECK(decomposition_width(one_edge, linear_decomposition({0, 1})) == 1);

  auto p4 = biorientation(testsupport::undirected_path(4));
  CHECK(decomposition_width(p4, linear_decomposition({0, 1, 2, 3})) == 2);

  Digraph edgeless(5, {});
  CHECK(decomposition_width(edgeless, linear_decomposition({4, 2, 0, 1, 3})) == 0);
}

TEST_CASE("decomposition_width is the same multi-threaded") {
  std::mt19937 rng(24);
  for (int iter = 0; iter < 10; ++iter) {
    auto g = testsupport::random_digraph(rng, 8, 0.3);
    auto bd = testsupport::random_decomposition(rng, 8);
    CHECK(decomposition_width(g, bd, WidthMeasure::bimim, 1) ==
          decomposition_width(g, bd, WidthMeasure::bimim, 4));
    CHECK(decomposition_width(g, bd, WidthMeasure::birank, 1) ==
          decomposition_width(g, bd, WidthMeasure::birank, 4));
  }
}

TEST_CASE("validation names the violated invariant") {
  // Degree-2 internal node.
  BranchDecomposition bad;
  bad.tree_nodes = 3;
  bad.tree_edges = {{0, 1}, {1, 2}};
  bad.leaf_of_vertex = {0, 2};
  bad.vertex_of_node = {0, -1, 1};
  CHECK_THROWS_WITH_AS(validate_decomposition(bad, 2),
                       doctest::Contains("subcubic"), std::invalid_argument);

  auto good = linear_decomposition({0, 1, 2});
  CHECK_THROWS_AS(validate_decomposition(good, 4), std::invalid_argument);
}

TEST_CASE("underlying mim value bounds the directed width per decomposition") {
  std::mt19937 rng(26);
  for (int iter = 0; iter < 60; ++iter) {
    int n = 2 + iter % 7;
    auto g = testsupport::random_digraph(rng, n, 0.35);
    auto h = underlying(g);
    auto bior = biorientation(h);
    auto bd = testsupport::random_decomposition(rng, n);
    // mim width of bd on h, cut by cut, via the biorientation identity.
    int undirected = 0;
    for (const auto& a : decomposition_cuts(bior, bd))
      undirected = std::max(
          undirected, detail::InducedMatchingSearch(bior, detail::cross_edges(bior, a)).solve());
    CHECK(undirected <= decomposition_width(g, bd, WidthMeasure::bimim));
  }
}

TEST_CASE("per-cut biorientation identity") {
  std::mt19937 rng(25);
  for (int iter = 0; iter < 100; ++iter) {
    int n = 2 + iter % 9;
    auto h = testsupport::random_graph(rng, n, 0.35);
    auto g = biorientation(h);
    detail::Bitset a(n);
    for (int v = 0; v < n; ++v)
      if (rng() & 1) a.set(v);
    detail::Bitset b = detail::complement(a);
    auto cross_a = detail::cross_edges(g, a);
    int plus = detail::InducedMatchingSearch(g, cross_a).solve();
    int minus = detail::InducedMatchingSearch(g, detail::cross_edges(g, b)).solve();
    CHECK(plus == minus);
    // Undirected nu of h[A, B] equals either directed value: same edge set,
    // same conflicts.
    if (cross_a.size() <= 14) CHECK(plus == subset_nu(g, cross_a));
  }
}
