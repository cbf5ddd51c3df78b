#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cyclecover/errors.hpp"
#include "cyclecover/graph.hpp"
#include "cyclecover/rng.hpp"

using namespace cyclecover;

namespace {

Graph petersen() {
  std::vector<Edge> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  for (auto& [u, v] : e)
    if (u > v) std::swap(u, v);
  return Graph::from_edges(10, e);
}

Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
  return Graph::from_edges(n, e);
}

// Reference: a permutation whose cycles all have length >= 3 and follow edges is a cycle cover.
bool permutation_oracle(const Graph& g, int k) {
  const int n = g.n();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    int cycles = 0;
    bool ok = true;
    for (int s = 0; s < n && ok; ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      int len = 0;
      for (int v = s; !seen[static_cast<std::size_t>(v)]; v = perm[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++len;
        if (!g.has_edge(v, perm[static_cast<std::size_t>(v)])) ok = false;
      }
      if (len < 3) ok = false;
      ++cycles;
    }
    if (ok && cycles <= k - 1) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST(Graph, FromEdgesSortsAndCounts) {
  Graph g = Graph::from_edges(4, {{2, 0}, {0, 1}, {3, 1}});
  EXPECT_EQ(g.m(), 3);
  EXPECT_EQ(g.neighbors(0), (std::vector<Vertex>{1, 2}));
  EXPECT_TRUE(g.has_edge(1, 3));
  EXPECT_FALSE(g.has_edge(0, 3));
  EXPECT_EQ(g.min_degree(), 1);
  EXPECT_EQ(g.max_degree(), 2);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {0, 2}, {1, 3}}));
}

TEST(Graph, RejectsLoopsRangeAndDuplicates) {
  EXPECT_THROW(Graph::from_edges(3, {{1, 1}}), Error);
  EXPECT_THROW(Graph::from_edges(3, {{0, 3}}), Error);
  EXPECT_THROW(Graph::from_edges(3, {{0, 1}, {1, 0}}), Error);
  EXPECT_EQ(Graph::from_edges(3, {{0, 1}, {1, 0}}, Graph::Duplicates::Merge).m(), 1);
}

TEST(Graph, InducedAndCrossing) {
  Graph c = cycle_graph(6);
  Graph h = c.induced({0, 1, 2});
  EXPECT_EQ(h.n(), 3);
  EXPECT_EQ(h.m(), 2);
  Graph x = c.crossing_subgraph({0, 1, 0, 1, 0, 0});
  EXPECT_EQ(x.m(), 4);
}

TEST(Graph, BallExcludesStartUnlessReached) {
  Graph p = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_EQ(ball(p, {0}, {0, 1, 2, 3}, 1), (VertexSet{1}));
  EXPECT_EQ(ball(p, {0}, {0, 1, 2, 3}, 2), (VertexSet{0, 1, 2}));
  // Internal vertices must lie in Y.
  EXPECT_EQ(ball(p, {0}, {1, 3}, 5), (VertexSet{1}));
  EXPECT_THROW(ball(p, {0}, {1}, 0), Error);
}

TEST(Graph, EssentialMinDegree) {
  // Star K_{1,4} plus an isolated vertex: degrees 4,1,1,1,1,0.
  Graph g = Graph::from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  EXPECT_EQ(essential_min_degree(g, 0.0), 0);
  EXPECT_EQ(essential_min_degree(g, 1.0 / 6.0), 1);
  EXPECT_EQ(essential_min_degree(g, 5.0 / 6.0), 4);
  EXPECT_THROW(essential_min_degree(g, 1.5), Error);
}

TEST(Graph, Components) {
  Graph g = Graph::from_edges(5, {{0, 1}, {3, 4}});
  auto cs = connected_components(g);
  ASSERT_EQ(cs.size(), 3u);
  EXPECT_FALSE(is_connected(g));
  EXPECT_TRUE(is_connected(cycle_graph(5)));
}

TEST(Graph, ValidateCycleCover) {
  Graph c = cycle_graph(5);
  EXPECT_TRUE(validate_cycle_cover(c, {{{0, 1, 2, 3, 4}}, 2}).pass);
  EXPECT_FALSE(validate_cycle_cover(c, {{{0, 1, 2, 3, 4}}, 1}).pass);
  EXPECT_FALSE(validate_cycle_cover(c, {{{0, 2, 1, 3, 4}}, 2}).pass);
  EXPECT_FALSE(validate_cycle_cover(c, {{{0, 1, 2}}, 2}).pass);
  EXPECT_EQ(validate_cycle_cover(c, {{{0, 1, 2, 3}}, 2}).violation, "cycle 0 uses non-edge 3-0");
}

TEST(Graph, PetersenOracle) {
  Graph g = petersen();
  EXPECT_FALSE(exact_cycle_cover_oracle(g, 2).exists);
  OracleResult r = exact_cycle_cover_oracle(g, 3);
  ASSERT_TRUE(r.exists);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(validate_cycle_cover(g, *r.witness).pass);
}

TEST(Graph, OracleAgreesWithPermutationSearch) {
  Rng rng(17);
  for (int t = 0; t < 150; ++t) {
    int n = rng.range(3, 7);
    std::vector<Edge> e;
    double p = 0.3 + 0.6 * rng.uniform();
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.bernoulli(p)) e.emplace_back(u, v);
    Graph g = Graph::from_edges(n, e);
    for (int k : {2, 3, 4}) {
      OracleResult r = exact_cycle_cover_oracle(g, k);
      ASSERT_EQ(r.exists, permutation_oracle(g, k)) << "trial " << t << " k " << k;
      if (r.exists) EXPECT_TRUE(validate_cycle_cover(g, *r.witness).pass);
    }
  }
}

TEST(Graph, OracleSizeLimit) { EXPECT_THROW(exact_cycle_cover_oracle(Graph(13), 2), Error); }

TEST(Graph, EdgeListRoundTrip) {
  Graph g = petersen();
  std::stringstream ss;
  write_edge_list(ss, g);
  EXPECT_EQ(read_edge_list(ss), g);
}

TEST(Graph, EdgeListErrors) {
  auto code_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_edge_list(in);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Argument;
  };
  EXPECT_EQ(code_of("x"), ErrorCode::Io);
  EXPECT_EQ(code_of("3 2\n0 1\n"), ErrorCode::Io);
  EXPECT_EQ(code_of("3 1\n1 0\n"), ErrorCode::Io);
  EXPECT_EQ(code_of("3 1\n0 3\n"), ErrorCode::Io);
  EXPECT_EQ(code_of("3 1\n1 1\n"), ErrorCode::Io);
  EXPECT_EQ(code_of("3 2\n0 1\n0 1\n"), ErrorCode::Io);
  EXPECT_EQ(code_of("3 1\n0 1\n5\n"), ErrorCode::Io);
  EXPECT_THROW(load_edge_list("/nonexistent/graph.txt"), Error);
}

TEST(Graph, SetHelpers) {
  EXPECT_EQ(make_set({3, 1, 3}), (VertexSet{1, 3}));
  EXPECT_EQ(complement(4, {1, 3}), (VertexSet{0, 2}));
  EXPECT_THROW(check_set(3, {0, 0}, "t"), Error);
  EXPECT_THROW(check_set(3, {3}, "t"), Error);
  Graph c = cycle_graph(4);
  EXPECT_EQ(edge_count_between(c, {0}, {1, 3}), 2);
  EXPECT_EQ(degree_into(c, 0, to_mask(4, {1, 2})), 1);
}
