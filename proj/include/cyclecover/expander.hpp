#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclecover/exec.hpp"
#include "cyclecover/graph.hpp"

namespace cyclecover {

struct Cut {
  VertexSet side1;
  VertexSet side2;
  std::int64_t crossing = 0;
  double ratio = 0.0;  // crossing / (|side1| * |side2|)
};

/// Builds a cut from one side and recounts its crossing edges.
Cut make_cut(const Graph& g, const VertexSet& side1);

struct ExpansionVerdict {
  enum class Kind { CertifiedExact, CutFound, Unknown };
  Kind kind = Kind::Unknown;
  double threshold = 0.0;
  double q_star = 0.0;  // meaningful for CertifiedExact
  std::optional<Cut> cut;
};

std::string to_string(ExpansionVerdict::Kind k);

struct ExactExpansion {
  double q_star = 0.0;
  std::optional<Cut> argmin;  // absent when n <= 1
};

/// Minimum cut ratio over all nontrivial bipartitions; n <= 20. Infinite for n <= 1.
ExactExpansion expansion_exact_with_cut(const Graph& g);
double expansion_exact(const Graph& g);

struct CutSearchOptions {
  int restarts = 2;
  int inverse_iterations = 10;
  int cg_iterations = 150;
  double cg_tol = 1e-5;
  std::uint64_t seed = 1;
  Exec exec = Exec::Parallel;
};

/// Lowest-ratio cut found by spectral sweep plus single-vertex moves.
/// Disconnected graphs return a component cut immediately. Absent when n <= 1.
std::optional<Cut> best_cut_search(const Graph& g, const CutSearchOptions& opt = {});

/// A cut of ratio < q if the heuristic finds one.
std::optional<Cut> sparse_cut_search(const Graph& g, double q, const CutSearchOptions& opt = {});

/// Exact for n <= 20, otherwise CutFound or Unknown.
ExpansionVerdict certify_expander(const Graph& g, double q, const CutSearchOptions& opt = {});

/// Counting form of the edges-out bound. Throws Error(Precondition) if some
/// a in A has deg(a) < |A| p + alpha n p.
bool edges_out_bound_check(const Graph& g, const VertexSet& a, double alpha, int n, double p, double beta);

struct MaxCut {
  std::vector<std::uint8_t> side;  // 0 = A, 1 = B
  std::int64_t cut = 0;
};

/// Single-vertex-move local search from random starts (lowest id moves first);
/// best of `restarts`, ties to the lowest restart index.
MaxCut max_cut_local_search(const Graph& g, int restarts, std::uint64_t seed, Exec exec = Exec::Parallel);

struct BipartiteSubgraph {
  std::vector<std::uint8_t> side;
  Graph subgraph;  // spanning, keeps only A-B edges
  ExpansionVerdict verdict;
};

/// Spanning bipartite subgraph from a local max cut. The verdict tests q/2 where q
/// is supplied or, for n <= 20, the exact expansion of G; otherwise it is Unknown.
BipartiteSubgraph bipartite_expander_subgraph(const Graph& g, int restarts, std::uint64_t seed, std::optional<double> q = std::nullopt,
                                              Exec exec = Exec::Parallel);

}  // namespace cyclecover
