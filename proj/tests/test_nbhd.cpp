#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "bimim/cut_width.hpp"
#include "bimim/nbhd.hpp"
#include "bimim/oracle.hpp"
#include "test_support.hpp"

using namespace bimim;

namespace {

std::vector<int> complement_of(int n, const std::vector<int>& a) {
  std::vector<char> in_a(n, 0);
  for (int v : a) in_a[v] = 1;
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (!in_a[v]) out.push_back(v);
  return out;
}

}  // namespace

TEST_CASE("describe basics") {
  // Single edge (0, 1), side {0}.
  Digraph g(2, {{0, 1}});
  auto zero = describe(g, {0}, 1, {});
  CHECK(zero.out_vec == std::vector<uint8_t>{0});
  CHECK(zero.in_vec == std::vector<uint8_t>{0});
  auto full = describe(g, {0}, 1, {0});
  CHECK(full.domain == std::vector<int>{1});
  CHECK(full.out_vec == std::vector<uint8_t>{1});
  CHECK(full.in_vec == std::vector<uint8_t>{0});

  CHECK_THROWS_AS(describe(g, {0}, 1, {1}), std::invalid_argument);
}

TEST_CASE("describe caps counts at d") {
  // u = 3 has three in-neighbors inside x.
  Digraph g(4, {{0, 3}, {1, 3}, {2, 3}});
  auto desc = describe(g, {0, 1, 2}, 1, {0, 1, 2});
  CHECK(desc.out_vec == std::vector<uint8_t>{1});
  auto desc2 = describe(g, {0, 1, 2}, 2, {0, 1, 2});
  CHECK(desc2.out_vec == std::vector<uint8_t>{2});
}

TEST_CASE("enumerate_classes tiny cases") {
  Digraph g(2, {{0, 1}});
  auto idx = enumerate_classes(g, {0}, 1);
  CHECK(idx.size() == 2);

  Digraph isolated(3, {});
  CHECK(enumerate_classes(isolated, {0, 1}, 1).size() == 1);
  CHECK(enumerate_classes(isolated, {}, 1).size() == 1);
}

TEST_CASE("enumerate_classes is sound and complete") {
  std::mt19937 rng(31);
  for (int iter = 0; iter < 150; ++iter) {
    int n = 1 + iter % 8;
    auto g = testsupport::random_digraph(rng, n, 0.35);
    std::vector<int> a;
    for (int v = 0; v < n; ++v)
      if (rng() & 1) a.push_back(v);
    int d = 1 + iter % 2;
    auto idx = enumerate_classes(g, a, d);

    // Soundness: stored description = describe(witness).
    for (uint32_t c = 0; c < idx.size(); ++c) {
      auto fromWitness = describe(g, a, d, idx.witness(c));
      CHECK(idx.find(fromWitness) == c);
    }

    // Completeness: every subset's description is present (|a| <= 8 here).
    std::set<std::vector<uint8_t>> distinct;
    int k = static_cast<int>(a.size());
    for (uint32_t mask = 0; mask < (uint32_t{1} << k); ++mask) {
      std::vector<int> x;
      for (int i = 0; i < k; ++i)
        if ((mask >> i) & 1) x.push_back(a[i]);
      auto desc = describe(g, a, d, x);
      CHECK(idx.find(desc) != ClassIndex::npos);
      std::vector<uint8_t> raw(desc.out_vec);
      raw.insert(raw.end(), desc.in_vec.begin(), desc.in_vec.end());
      distinct.insert(raw);
    }
    CHECK(distinct.size() == idx.size());
  }
}

TEST_CASE("equivalence by definition iff equal descriptions") {
  std::mt19937 rng(32);
  for (int iter = 0; iter < 60; ++iter) {
    int n = 2 + iter % 6;
    auto g = testsupport::random_digraph(rng, n, 0.4);
    std::vector<int> a;
    for (int v = 0; v < n; ++v)
      if (rng() % 3) a.push_back(v);
    int d = 1 + iter % 2;
    int k = static_cast<int>(a.size());
    if (k > 5) continue;
    auto comp = complement_of(n, a);
    for (uint32_t m1 = 0; m1 < (uint32_t{1} << k); ++m1)
      for (uint32_t m2 = m1; m2 < (uint32_t{1} << k); ++m2) {
        std::vector<int> x, y;
        for (int i = 0; i < k; ++i) {
          if ((m1 >> i) & 1) x.push_back(a[i]);
          if ((m2 >> i) & 1) y.push_back(a[i]);
        }
        // Definition: equal capped counts at every complement vertex.
        bool equivalent = true;
        for (int u : comp) {
          int fx = 0, fy = 0, tx = 0, ty = 0;
          for (int w : x) {
            fx += g.has_edge(w, u) ? 1 : 0;
            tx += g.has_edge(u, w) ? 1 : 0;
          }
          for (int w : y) {
            fy += g.has_edge(w, u) ? 1 : 0;
            ty += g.has_edge(u, w) ? 1 : 0;
          }
          if (std::min(d, fx) != std::min(d, fy) || std::min(d, tx) != std::min(d, ty))
            equivalent = false;
        }
        CHECK(equivalent == (describe(g, a, d, x) == describe(g, a, d, y)));
      }
  }
}

TEST_CASE("combine_descriptions equals description of the union") {
  std::mt19937 rng(33);
  for (int iter = 0; iter < 100; ++iter) {
    int n = 3 + iter % 6;
    auto g = testsupport::random_digraph(rng, n, 0.4);
    // Random 3-partition (A, B, W).
    std::vector<int> a, b, w;
    for (int v = 0; v < n; ++v) {
      int roll = static_cast<int>(rng() % 3);
      (roll == 0 ? a : roll == 1 ? b : w).push_back(v);
    }
    int d = 1 + iter % 2;
    std::vector<int> x, y;
    for (int v : a)
      if (rng() & 1) x.push_back(v);
    for (int v : b)
      if (rng() & 1) y.push_back(v);
    auto da = describe(g, a, d, x);
    auto db = describe(g, b, d, y);
    auto combined = combine_descriptions(da, db, w);

    std::vector<int> ab(a);
    ab.insert(ab.end(), b.begin(), b.end());
    std::sort(ab.begin(), ab.end());
    std::vector<int> xy(x);
    xy.insert(xy.end(), y.begin(), y.end());
    auto direct = describe(g, ab, d, xy);
    CHECK(combined.out_vec == direct.out_vec);
    CHECK(combined.in_vec == direct.in_vec);
    CHECK(combined.domain == direct.domain);
  }
}

TEST_CASE("combine cap forces min(d, sum)") {
  Digraph g(3, {{0, 2}, {1, 2}});
  auto da = describe(g, {0}, 1, {0});
  auto db = describe(g, {1}, 1, {1});
  auto combined = combine_descriptions(da, db, {2});
  CHECK(combined.out_vec == std::vector<uint8_t>{1});
  auto mismatched = describe(g, {1}, 2, {1});
  CHECK_THROWS_AS(combine_descriptions(da, mismatched, {2}), std::invalid_argument);
}

TEST_CASE("class count matches brute force") {
  std::mt19937 rng(34);
  for (int iter = 0; iter < 200; ++iter) {
    int n = 1 + iter % 8;
    auto g = testsupport::random_digraph(rng, n, 0.35);
    std::vector<int> a;
    for (int v = 0; v < n; ++v)
      if (rng() & 1) a.push_back(v);
    int d = 1 + iter % 2;
    auto idx = enumerate_classes(g, a, d);
    oracle::Budget budget;
    budget.max_vertices = 8;
    CHECK(static_cast<int>(idx.size()) == oracle::brute_nec(g, a, d, budget));
  }
}

TEST_CASE("nec bound from the cut's bimim value") {
  std::mt19937 rng(35);
  int tested = 0;
  for (int iter = 0; iter < 300 && tested < 60; ++iter) {
    int n = 2 + iter % 7;
    auto g = testsupport::random_digraph(rng, n, 0.3);
    std::vector<int> a;
    for (int v = 0; v < n; ++v)
      if (rng() & 1) a.push_back(v);
    int d = 1 + iter % 2;
    auto cv = cut_values(g, Cut{a});
    if (cv.bimim() > 3) continue;
    ++tested;
    auto idx = enumerate_classes(g, a, d);
    double bound = std::pow(static_cast<double>(n), static_cast<double>(d) * cv.bimim());
    CHECK(static_cast<double>(idx.size()) <= bound + 1e-9);
  }
  CHECK(tested > 0);
}

TEST_CASE("q-tuple index is the cartesian product") {
  Digraph g(3, {{0, 2}, {2, 1}});
  auto base = enumerate_classes(g, {0, 1}, 1);
  auto q1 = q_enumerate_classes(base, 1);
  CHECK(q1.size() == base.size());

  auto q2 = q_enumerate_classes(base, 2);
  CHECK(q2.size() == base.size() * base.size());
  for (uint64_t t = 0; t < q2.size(); ++t) {
    auto digits = q2.digits(t);
    CHECK(q2.compose(digits) == t);
    auto tuple_witness = q2.witness(t);
    REQUIRE(tuple_witness.size() == 2);
    CHECK(tuple_witness[0] == base.witness(digits[0]));
    CHECK(tuple_witness[1] == base.witness(digits[1]));
  }
}

TEST_CASE("q-tuple class count by brute force equals the product law") {
  std::mt19937 rng(37);
  for (int iter = 0; iter < 20; ++iter) {
    int n = 2 + iter % 5;
    auto g = testsupport::random_digraph(rng, n, 0.4);
    std::vector<int> a;
    for (int v = 0; v < n; ++v)
      if (rng() % 2) a.push_back(v);
    if (a.size() > 3) a.resize(3);
    int k = static_cast<int>(a.size());
    auto base = enumerate_classes(g, a, 1);

    // Count distinct pair-descriptions over all (X1, X2) in (2^a)^2 directly.
    std::set<std::pair<std::vector<uint8_t>, std::vector<uint8_t>>> distinct;
    auto raw = [&](uint32_t mask) {
      std::vector<int> x;
      for (int i = 0; i < k; ++i)
        if ((mask >> i) & 1) x.push_back(a[i]);
      auto d = describe(g, a, 1, x);
      std::vector<uint8_t> bytes(d.out_vec);
      bytes.insert(bytes.end(), d.in_vec.begin(), d.in_vec.end());
      return bytes;
    };
    for (uint32_t m1 = 0; m1 < (uint32_t{1} << k); ++m1)
      for (uint32_t m2 = 0; m2 < (uint32_t{1} << k); ++m2)
        distinct.insert({raw(m1), raw(m2)});
    CHECK(distinct.size() == base.size() * base.size());
    CHECK(q_enumerate_classes(base, 2).size() == base.size() * base.size());
  }
}

TEST_CASE("d=0 collapses everything to one class") {
  std::mt19937 rng(36);
  auto g = testsupport::random_digraph(rng, 6, 0.5);
  CHECK(enumerate_classes(g, {0, 1, 2, 3}, 0).size() == 1);
}
