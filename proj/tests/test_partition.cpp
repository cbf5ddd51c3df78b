#include <gtest/gtest.h>

#include <set>

#include "cyclecover/errors.hpp"
#include "cyclecover/partition.hpp"
#include "cyclecover/randgen.hpp"
#include "cyclecover/rng.hpp"

using namespace cyclecover;

namespace {

// Fixed-point iteration: repeatedly add any x with deg(x, W u Y) >= t.
VertexSet naive_peel(const Graph& g, const VertexSet& x, const VertexSet& y, double t) {
  std::vector<std::uint8_t> in = to_mask(g.n(), y);
  VertexSet w;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v : x) {
      if (in[static_cast<std::size_t>(v)]) continue;
      if (degree_into(g, v, in) >= t) {
        in[static_cast<std::size_t>(v)] = 1;
        w.push_back(v);
        changed = true;
      }
    }
  }
  return make_set(w);
}

}  // namespace

TEST(Partition, PeelMatchesFixedPoint) {
  Rng rng(3);
  for (int t = 0; t < 25; ++t) {
    Graph g = gnp(80, 0.1, static_cast<std::uint64_t>(t));
    VertexSet all = complement(80, {});
    rng.shuffle(all);
    VertexSet x = make_set(VertexSet(all.begin(), all.begin() + 40));
    VertexSet y = make_set(VertexSet(all.begin() + 40, all.end()));
    double thr = rng.range(1, 4);
    Peel p = kernel_peel(g, x, y, thr);
    EXPECT_EQ(p.w, naive_peel(g, x, y, thr));
    VertexSet wy = p.w;
    wy.insert(wy.end(), y.begin(), y.end());
    auto mask = to_mask(80, make_set(wy));
    for (Vertex v : p.rest) EXPECT_LT(degree_into(g, v, mask), thr);
    VertexSet both = p.w;
    both.insert(both.end(), p.rest.begin(), p.rest.end());
    EXPECT_EQ(make_set(both), x);
  }
}

TEST(Partition, PeelRejectsOverlap) {
  Graph g = gnp(10, 0.5, 1);
  EXPECT_THROW(kernel_peel(g, {0, 1}, {1, 2}, 1.0), Error);
}

TEST(Partition, CheckPartition) {
  EXPECT_NO_THROW(check_partition(4, {{0}, {{1, 2}, {3}}}));
  EXPECT_THROW(check_partition(4, {{0}, {{1, 2}}}), Error);
  EXPECT_THROW(check_partition(4, {{0, 1}, {{1, 2}, {3}}}), Error);
  EXPECT_THROW(check_partition(2, {{0, 1}, {}}), Error);
}

TEST(Partition, RefineSplitsPlantedCut) {
  PlantedInstance inst = planted_blocks(2, 100, 0.4, 5);
  LabeledPartition part{{}, {complement(100, {})}};
  VertexSet s1, s2;
  for (int v = 0; v < 100; ++v) (inst.block[static_cast<std::size_t>(v)] == 0 ? s1 : s2).push_back(v);
  Cut cut = make_cut(inst.graph, s1);
  LabeledPartition out = refine_once(inst.graph, part, 0, cut, 3.0);
  ASSERT_EQ(out.level(), 2);
  EXPECT_EQ(out.parts[0], s1);
  EXPECT_EQ(out.parts[1], s2);
  EXPECT_TRUE(out.v0.empty());
  EXPECT_THROW(refine_once(inst.graph, part, 1, cut, 3.0), Error);
  EXPECT_THROW(refine_once(inst.graph, part, 0, make_cut(inst.graph, {0}), 0.0), Error);
}

TEST(Partition, RedistributeJoinsDensestPart) {
  PlantedInstance inst = planted_blocks(2, 60, 0.6, 6);
  VertexSet s1, s2;
  for (int v = 0; v < 60; ++v) (inst.block[static_cast<std::size_t>(v)] == 0 ? s1 : s2).push_back(v);
  LabeledPartition part{{s1[0], s2[0]}, {VertexSet(s1.begin() + 1, s1.end()), VertexSet(s2.begin() + 1, s2.end())}};
  LabeledPartition out = redistribute_v0(inst.graph, part, 0.2, 60, 0.3, 0.0);
  EXPECT_TRUE(out.v0.empty());
  EXPECT_EQ(out.parts[0], s1);
  EXPECT_EQ(out.parts[1], s2);
  EXPECT_THROW(redistribute_v0(inst.graph, part, 5.0, 60, 0.3, 0.0), Error);
}

TEST(Partition, AssessReportsDegreeFloor) {
  Graph g = gnp(100, 0.3, 7);
  LabeledPartition part{{}, {complement(100, {})}};
  GoodnessReport r = assess_partition(g, part, 0.1, 0.05, 0.1, 100, 0.3);
  EXPECT_TRUE(r.good);
  GoodnessReport bad = assess_partition(g, part, 0.9, 0.05, 0.1, 100, 0.3);
  EXPECT_FALSE(bad.good);
}

TEST(Partition, RecoversSmallPlantedBlocks) {
  PlantedInstance inst = planted_blocks(3, 600, 0.2, 8);
  PartitionParams pp;
  pp.c = 0.15;
  pp.alpha = 0.03;
  pp.p = 0.2;
  PartitionResult res = partition_into_expanders(inst.graph, pp);
  ASSERT_EQ(res.parts.size(), 3u);
  std::set<VertexSet> got(res.parts.begin(), res.parts.end());
  for (int b = 0; b < 3; ++b) {
    VertexSet blk;
    for (int v = 0; v < 600; ++v)
      if (inst.block[static_cast<std::size_t>(v)] == b) blk.push_back(v);
    EXPECT_TRUE(got.count(blk)) << "block " << b;
  }
  EXPECT_TRUE(res.verification.min_degree_ok);
  EXPECT_TRUE(res.verification.expansion_ok);
}

TEST(Partition, SinglePartForExpander) {
  Graph g = gnp(300, 0.2, 9);
  PartitionParams pp;
  pp.p = 0.2;
  PartitionResult res = partition_into_expanders(g, pp);
  EXPECT_EQ(res.parts.size(), 1u);
  EXPECT_EQ(res.parts[0].size(), 300u);
}

TEST(Partition, LevelCapExceeded) {
  PlantedInstance inst = planted_blocks(4, 400, 0.3, 10);
  PartitionParams pp;
  pp.c = 0.5;  // at most one split allowed
  pp.p = 0.3;
  try {
    partition_into_expanders(inst.graph, pp);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PartitionLimitExceeded);
  }
}
