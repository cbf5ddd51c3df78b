#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclecover/exec.hpp"
#include "cyclecover/graph.hpp"

namespace cyclecover {

struct SparsenessWitness {
  VertexSet x;
  VertexSet y;
  std::int64_t edges = 0;
  double excess = 0.0;  // e(X,Y) - p|X||Y| - beta*sqrt(|X||Y|)
};

struct SparsenessCertificate {
  enum class Method { Exact, Spectral, Heuristic };
  double p = 0.0;
  double beta = 0.0;
  Method method = Method::Exact;
  std::optional<SparsenessWitness> witness;

  /// True when the certificate proves (p, beta2)-sparseness without recomputation.
  bool certifies(double p2, double beta2) const { return !witness && p2 == p && beta2 >= beta; }
};

std::string to_string(SparsenessCertificate::Method m);

/// e(X,Y) - p|X||Y| - beta*sqrt(|X||Y|) by direct counting.
double sparseness_excess(const Graph& g, const VertexSet& x, const VertexSet& y, double p, double beta);

/// Exact check over all subset pairs; n <= 20. For each X the best Y of every size
/// takes the vertices with most neighbours in X. The witness, if any, is the pair
/// of largest excess (ties: smaller X mask, then smaller |Y|).
SparsenessCertificate check_sparse_exact(const Graph& g, double p, double beta);

struct SpectralResult {
  double beta = 0.0;          // estimate of ||A - pJ||_2
  double achieved_tol = 0.0;  // relative change at the final iteration
  int iterations = 0;
  bool converged = false;
};

struct SpectralOptions {
  double tol = 1e-9;
  int max_iterations = 200000;
  std::uint64_t seed = 1;
  Exec exec = Exec::Parallel;
};

/// Operator norm of A - pJ by matrix-free power iteration on (A - pJ)^2.
SpectralResult spectral_beta(const Graph& g, double p, const SpectralOptions& opt = {});

/// y = (A - pJ) x. The serial and parallel kernels give bitwise-equal results.
void shifted_adjacency_matvec(const Graph& g, double p, const std::vector<double>& x, std::vector<double>& y, Exec exec);

struct ViolationSearchOptions {
  int restarts = 64;
  int max_moves = 100000;
  std::uint64_t seed = 1;
  Exec exec = Exec::Parallel;
};

/// Greedy add/remove local search with random restarts. A returned witness has
/// positive excess by direct recount; absence proves nothing.
std::optional<SparsenessWitness> violation_search(const Graph& g, double p, double beta, const ViolationSearchOptions& opt = {});

}  // namespace cyclecover
