#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cyclecover/exec.hpp"
#include "cyclecover/graph.hpp"
#include "cyclecover/partition.hpp"
#include "cyclecover/steering.hpp"

namespace cyclecover {

struct ApproxCover {
  std::vector<Cycle> cycles;
  VertexSet leftover;
};

/// Up to k-1 vertex-disjoint cycles from rotation-extension, each grown in the largest
/// remaining component, with `attempts` independent tries. Throws
/// Error(CoverageShortfall) if every try leaves more than mu n vertices uncovered.
ApproxCover approx_cycle_cover_detailed(const Graph& g, int k, double mu, long long budget, std::uint64_t seed,
                                        ExtensionRule rule = ExtensionRule::FewestFree, int attempts = 3);
std::vector<Cycle> approx_cycle_cover(const Graph& g, int k, double mu, long long budget, std::uint64_t seed);

struct PathForestParams {
  double mu = 0.02;
  /// Smallest level size; levels halve while above it.
  int level_floor = 64;
  long long budget = 0;
  std::uint64_t seed = 1;
};

/// k-1 path forests jointly covering V(G). Random nested levels
/// V = L_0 > L_1 > ... > L_m with |L_i| = floor(n / 2^i); the ring L_i \ L_{i+1} plus
/// the leftovers carried in is covered approximately, cycles are opened into paths,
/// and the final leftovers become singleton paths.
/// Throws Error(Argument) for max_paths < 1 and Error(CoverageShortfall) when a
/// forest would exceed max_paths.
std::vector<PathForest> path_forest_cover(const Graph& g, int k, int max_paths, const PathForestParams& params);

enum class PairClass { AExpanding, BExpanding, Both };

struct PairLedger {
  std::vector<PairClass> pairs;
  /// Side assigned to each pair: 0 = A, 1 = B (filled by balance_pairs).
  std::vector<int> side;
  int n_a = 0;
  int n_b = 0;
  /// Pool vertices spliced into the absorber-side chain, in order.
  std::vector<Vertex> insertions;
};

/// Counts forced pairs, gives each flexible pair to the currently smaller side (ties
/// broken by seed), then takes vertices from Q_A / Q_B, each adding one pair to its
/// side, until n_a == n_b. The result is recounted. Throws Error(BalanceInfeasible).
PairLedger balance_pairs(const PairLedger& ledger, const VertexSet& q_a, const VertexSet& q_b, std::uint64_t seed);

struct PipelineConfig {
  double p = 0.0;  // non-positive: edge density of the input
  std::uint64_t seed = 1;
  int retries = 6;
  /// Graphs with fewer vertices skip the absorber pipeline.
  int small_n = 200;
  bool use_partition = true;
  double c = 1.0 / 3.0;
  double alpha = 0.1;
  double xi = 0.05;
  double gamma_target = 0.05;
  CutSearchOptions cut;
  int u_size = 2;
  double w_fraction = 0.6;
  std::array<double, 3> w_split = {0.5, 0.25, 0.25};
  int template_r = 20;
  int connect_max_len = 12;
  int connect_budget = 8;
  long long rotation_budget = 0;
  long long steering_budget = 4000;
  ExtensionRule rule = ExtensionRule::FewestFree;
  bool inheritance_checks = true;
  /// Fraction of p used as gamma_1 in the sampled inheritance checks.
  double gamma1 = 0.01;
  Exec exec = Exec::Parallel;
};

struct CoverStats {
  std::string route;  // "absorber" or "direct"
  int attempts = 0;
  int parts = 1;
  std::vector<int> part_k;
  int absorber_vertices = 0;
  int absorber_gadgets = 0;
  int direct_junctions = 0;
  int absorbed_u = 0;
  int inheritance_checked = 0;
  int inheritance_passed = 0;
  std::vector<std::string> retry_reasons;
};

/// Cover of an expanding graph by at most k-1 cycles, validated before returning.
CycleCover cover_expander(const Graph& g, int k, const PipelineConfig& cfg, CoverStats* stats = nullptr);

/// Partition into expanders, cover each part with k_i = ceil(k n_i / n) (raised to 2)
/// cycles, validate the union. Throws Error(PartitionBudgetError) if sum(k_i - 1) > k - 1.
CycleCover cover_graph(const Graph& g, int k, const PipelineConfig& cfg, CoverStats* stats = nullptr);

}  // namespace cyclecover
