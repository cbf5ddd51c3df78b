#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cyclecover/expander.hpp"
#include "cyclecover/graph.hpp"

namespace cyclecover {

struct LabeledPartition {
  VertexSet v0;
  std::vector<VertexSet> parts;
  int level() const { return static_cast<int>(parts.size()); }
};

/// Disjointness and coverage of V(G); throws Error(Argument) otherwise.
void check_partition(int n, const LabeledPartition& part);

struct GoodnessReport {
  bool good = false;
  bool perfect = false;
  bool provisional = false;  // some part had an Unknown expansion verdict
  std::optional<int> failing_part;
  std::optional<Cut> failing_cut;  // in host vertex ids
};

/// L1: |V0| <= alpha n. L2: delta(G[V_i]) >= (c + alpha / 2^level) n p.
/// L3: certify_expander(G[V_i], gamma p) is not CutFound.
GoodnessReport assess_partition(const Graph& g, const LabeledPartition& part, double c, double alpha, double gamma, int n, double p,
                                const CutSearchOptions& opt = {});

struct Peel {
  VertexSet w;     // W_X
  VertexSet rest;  // V_X = X \ W_X
};

/// Closure of {v in X : deg(v, Y) >= threshold} under adding any v in X with
/// deg(v, W_X u Y) >= threshold. Every v in V_X then has deg(v, W_X u Y) < threshold.
Peel kernel_peel(const Graph& g, const VertexSet& x, const VertexSet& y, double threshold);

/// Replaces part `index` by the peeled cores of the cut sides and moves the
/// peeled vertices into V0. Throws Error(DegenerateRefinement) if a core is empty.
LabeledPartition refine_once(const Graph& g, const LabeledPartition& part, int index, const Cut& cut, double threshold);

/// Empties V0: vertices are taken in order of maximum outside degree and each joins
/// the part where its accumulated degree is largest, which must be >= c n p / level.
/// Throws Error(InfeasibleDegree) when no part qualifies.
LabeledPartition redistribute_v0(const Graph& g, const LabeledPartition& part, double c, int n, double p, double beta);

struct PartitionParams {
  double c = 1.0 / 3.0;
  double alpha = 0.1;
  double xi = 0.05;
  double p = 0.0;
  double beta = 0.0;
  double gamma_target = 0.05;
  /// Peel parameter; negative selects c^2 xi / 4.
  double peel_alpha = -1.0;
  /// Level cap; non-positive selects ceil(1 / c).
  int level_cap = 0;
  CutSearchOptions cut;
};

struct PartitionVerification {
  std::vector<ExpansionVerdict> expansion;  // (i) per part at gamma_target p
  std::vector<int> min_degree;              // (ii) delta(G[V_i]) >= c^2 n p
  std::vector<int> essential_min_degree;    // (iii) delta_xi(G[V_i]) >= (c + alpha - xi) n p
  bool expansion_ok = true;
  bool provisional = false;
  bool min_degree_ok = true;
  bool essential_ok = true;
  std::vector<GoodnessReport> history;
};

struct PartitionResult {
  std::vector<VertexSet> parts;
  PartitionVerification verification;
};

/// Refines until every part is a gamma_target p expander (or the heuristic cannot
/// refute it), then redistributes V0. Throws Error(PartitionLimitExceeded) when the
/// level cap is reached first.
PartitionResult partition_into_expanders(const Graph& g, const PartitionParams& params);

}  // namespace cyclecover
