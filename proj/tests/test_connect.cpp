#include <gtest/gtest.h>

#include <deque>

#include "cyclecover/connect.hpp"
#include "cyclecover/errors.hpp"
#include "cyclecover/randgen.hpp"
#include "cyclecover/rng.hpp"

using namespace cyclecover;

namespace {

// Shortest u-v distance with internal vertices in W \ Z, plain breadth-first search.
int bfs_distance(const Graph& g, Vertex u, Vertex v, const VertexSet& w, const VertexSet& z) {
  std::vector<std::uint8_t> ok = to_mask(g.n(), w);
  for (Vertex x : z) ok[static_cast<std::size_t>(x)] = 0;
  std::vector<int> dist(static_cast<std::size_t>(g.n()), -1);
  std::deque<Vertex> q{u};
  dist[static_cast<std::size_t>(u)] = 0;
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop_front();
    for (Vertex y : g.neighbors(x)) {
      if (dist[static_cast<std::size_t>(y)] >= 0) continue;
      if (y == v) return dist[static_cast<std::size_t>(x)] + 1;
      if (!ok[static_cast<std::size_t>(y)]) continue;
      dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
      q.push_back(y);
    }
  }
  return -1;
}

Graph path_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

}  // namespace

TEST(Connect, FrozenLengthFormulas) {
  EXPECT_EQ(default_connect_length(1000, 1.0), 108);
  EXPECT_EQ(ball_growth_length(1000, 1.0), 36);
  EXPECT_EQ(default_connect_length(10, 0.5), 164);
  EXPECT_EQ(ball_growth_length(100000, 0.2), 236);
}

TEST(Connect, DemandHelpers) {
  ConnectionDemand d;
  d.add(0, 1, 2);
  d.add(1, 2);
  EXPECT_EQ(d.edges.size(), 3u);
  EXPECT_EQ(d.terminals(), (VertexSet{0, 1, 2}));
  EXPECT_EQ(d.max_degree(), 3);
}

TEST(Connect, ShortestPathMatchesBfs) {
  Rng rng(5);
  for (int t = 0; t < 40; ++t) {
    Graph g = gnp(60, 0.06, static_cast<std::uint64_t>(t));
    VertexSet all = complement(60, {});
    rng.shuffle(all);
    Vertex u = all[0], v = all[1];
    VertexSet w = make_set(VertexSet(all.begin() + 2, all.begin() + 45));
    VertexSet z = make_set(VertexSet(all.begin() + 2, all.begin() + 6));
    int ref = bfs_distance(g, u, v, w, z);
    auto p = find_path_avoiding(g, u, v, w, z, 60);
    if (ref < 0) {
      EXPECT_FALSE(p.has_value());
      continue;
    }
    ASSERT_TRUE(p.has_value());
    EXPECT_EQ(static_cast<int>(p->size()) - 1, ref);
    EXPECT_TRUE(is_path(g, *p));
    EXPECT_FALSE(find_path_avoiding(g, u, v, w, z, ref - 1).has_value());
  }
}

TEST(Connect, ReachAndGrowth) {
  Graph g = path_graph(6);
  EXPECT_EQ(reach(g, {0}, {1, 2, 3, 4, 5}, {3}, 10), (VertexSet{1, 2}));
  EXPECT_EQ(growth_profile(g, {0}, {1, 2, 3, 4, 5}, {}, 3), (std::vector<int>{1, 2, 3}));
}

TEST(Connect, RoutesAreRecountable) {
  Graph g = gnp(600, 0.05, 7);
  Rng rng(8);
  VertexSet all = complement(600, {});
  rng.shuffle(all);
  ConnectionDemand d;
  for (int i = 0; i < 15; ++i) d.add(all[static_cast<std::size_t>(2 * i)], all[static_cast<std::size_t>(2 * i + 1)]);
  d.add(all[0], all[1]);  // a parallel demand
  VertexSet w = make_set(VertexSet(all.begin() + 30, all.end()));
  ConnectOptions opt;
  opt.max_len = 8;
  PathSystem ps = connect_all(g, d, w, opt);
  EXPECT_EQ(check_path_system(g, d, w, 8, ps), "");
}

TEST(Connect, CheckerCatchesViolations) {
  Graph g = path_graph(5);
  ConnectionDemand d;
  d.add(0, 4, 1);
  d.add(0, 4, 1);
  VertexSet w{1, 2, 3};
  PathSystem shared{{{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}}, {1, 2, 3}};
  EXPECT_NE(check_path_system(g, d, w, 10, shared).find("shared"), std::string::npos);
  PathSystem too_long{{{0, 1, 2, 3, 4}}, {1, 2, 3}};
  ConnectionDemand one;
  one.add(0, 4);
  EXPECT_NE(check_path_system(g, one, w, 3, too_long).find("length"), std::string::npos);
  EXPECT_NE(check_path_system(g, one, {1, 2}, 10, too_long).find("outside W"), std::string::npos);
}

TEST(Connect, EntrySetsAreHonoured) {
  Graph g = gnp(300, 0.1, 9);
  ConnectionDemand d;
  d.entry_sets.push_back(to_mask(300, complement(300, {})));
  std::vector<std::uint8_t> odd(300, 0);
  for (int v = 1; v < 300; v += 2) odd[static_cast<std::size_t>(v)] = 1;
  d.entry_sets.push_back(odd);
  d.edges.push_back({0, 2, false, 1, 1});
  VertexSet w = complement(300, {0, 2});
  PathSystem ps = connect_all(g, d, w, {});
  EXPECT_EQ(check_path_system(g, d, w, 10, ps), "");
  EXPECT_EQ(ps.routes[0][1] % 2, 1);
  EXPECT_EQ(ps.routes[0][ps.routes[0].size() - 2] % 2, 1);
}

TEST(Connect, PigeonholeFailsFast) {
  // Three demands at a vertex of degree 2 cannot be routed.
  Graph g = Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}});
  ConnectionDemand d;
  d.add(0, 4, 3);
  try {
    connect_all(g, d, {1, 2, 3}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConnectivityExhausted);
  }
}

TEST(Connect, RejectsEndpointInsideW) {
  Graph g = path_graph(3);
  ConnectionDemand d;
  d.add(0, 2);
  EXPECT_THROW(connect_all(g, d, {0, 1}, {}), Error);
}

TEST(Connect, HaxellConditionImpliesMatching) {
  Rng rng(11);
  int holds = 0;
  for (int t = 0; t < 300; ++t) {
    SmallHypergraph h;
    h.na = rng.range(1, 4);
    h.nb = rng.range(2, 8);
    int r = rng.range(2, 3);
    if (r - 1 > h.nb) r = 2;
    int m = rng.range(1, 12);
    for (int i = 0; i < m; ++i) {
      std::uint32_t mask = 0;
      for (int b : rng.sample(h.nb, r - 1)) mask |= 1u << b;
      h.edges.emplace_back(rng.range(0, h.na - 1), mask);
    }
    HaxellCheck c = haxell_check_small(h);
    EXPECT_EQ(c.r, r);
    if (c.condition_holds) {
      ++holds;
      EXPECT_TRUE(c.matching_exists) << "trial " << t;
    }
  }
  EXPECT_GT(holds, 0);
}

TEST(Connect, HaxellExamples) {
  // Graph case (r = 2): two A-vertices sharing their only neighbour.
  SmallHypergraph h{2, 2, {{0, 0b01}, {1, 0b01}}};
  HaxellCheck c = haxell_check_small(h);
  EXPECT_FALSE(c.matching_exists);
  EXPECT_FALSE(c.condition_holds);
  SmallHypergraph k{2, 2, {{0, 0b01}, {1, 0b10}, {1, 0b01}, {0, 0b10}}};
  c = haxell_check_small(k);
  EXPECT_TRUE(c.matching_exists);
  EXPECT_TRUE(c.condition_holds);
  SmallHypergraph big{8, 7, {}};
  EXPECT_THROW(haxell_check_small(big), Error);
  SmallHypergraph mixed{1, 3, {{0, 0b1}, {0, 0b11}}};
  EXPECT_THROW(haxell_check_small(mixed), Error);
}
