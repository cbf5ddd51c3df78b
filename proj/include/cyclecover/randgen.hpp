#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyclecover/exec.hpp"
#include "cyclecover/graph.hpp"

namespace cyclecover {

/// G(n, p). Row i draws the pairs (i, j > i) from stream derive(i) of the seed, so
/// the graph does not depend on the thread count.
Graph gnp(int n, double p, std::uint64_t seed, Exec exec = Exec::Parallel);

struct PlantedInstance {
  Graph graph;
  std::vector<int> block;  // block index of every vertex
};

/// Disjoint union of k independent G(n_i, p) blocks on contiguous id ranges. The
/// first n mod k blocks receive one extra vertex.
PlantedInstance planted_blocks(int k, int n, double p, std::uint64_t seed);

/// Uniform-ish random d-regular simple graph by sequential pairing with restarts.
Graph random_regular(int n, int d, std::uint64_t seed);

struct BipartiteInstance {
  Graph graph;
  std::vector<std::uint8_t> side;  // 0 for copy (v,0) = v, 1 for copy (v,1) = v + n
};

/// Bipartite double cover: vertices (v, i), edges (u,0)(v,1) and (v,0)(u,1) for uv in E.
BipartiteInstance bipartite_double_cover(const Graph& g);

enum class AdversaryStrategy { RandomDeletion, BipartiteSplit, CliqueSplit, TargetedMinDegree };

std::string to_string(AdversaryStrategy s);
AdversaryStrategy parse_adversary_strategy(const std::string& name);

struct Adversary {
  AdversaryStrategy strategy = AdversaryStrategy::RandomDeletion;
  double r = 0.0;
  int parts = 2;  // k for the split strategies
};

/// Largest number of edges that may be removed at each vertex: strictly below r * deg(v).
std::vector<int> deletion_caps(const Graph& g, double r);

/// Deletes edges according to the strategy without exceeding any vertex cap.
Graph apply_adversary(const Graph& g, const Adversary& adv, std::uint64_t seed);

/// True iff h is a spanning subgraph of g losing fewer than r * deg_g(v) edges at every v.
bool audit_adversary(const Graph& g, const Graph& h, double r);

}  // namespace cyclecover
