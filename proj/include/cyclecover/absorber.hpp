#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclecover/exec.hpp"
#include "cyclecover/graph.hpp"

namespace cyclecover {

/// Bipartite template on A_T = B_T = {0..2n-1}. Vertex t and t + n are twins;
/// ids below n form the flexible halves A' and B'.
struct TemplateGraph {
  int size_n = 0;
  int matchings_used = 0;
  std::vector<Edge> base_edges;            // edges of H on [0,n) x [0,n)
  std::vector<Edge> edges;                 // (a, b), sorted
  std::vector<std::vector<int>> adj_a;     // A_T vertex -> sorted B_T neighbours
  std::vector<std::vector<int>> adj_b;     // B_T vertex -> sorted A_T neighbours
  int max_degree() const;
};

enum class VerifyMode { Auto, Exhaustive, Sampled };

struct TemplateVerification {
  bool exhaustive = false;
  long long checked = 0;
  long long passed = 0;
  int attempts = 0;
  std::optional<std::pair<VertexSet, VertexSet>> counterexample;
};

struct TemplateOptions {
  VerifyMode mode = VerifyMode::Auto;
  long long samples = 1000;
  int max_attempts = 50;
  Exec exec = Exec::Parallel;
};

/// Perfect matching of G_T - Z as a list of template edges, or nullopt.
std::optional<std::vector<Edge>> template_perfect_matching(const TemplateGraph& t, const VertexSet& z_a, const VertexSet& z_b);

/// As above but throws Error(UnbalancedAbsorptionRequest) for |Z_A| != |Z_B| or ids
/// outside the flexible halves, and Error(NoMatching) when none exists.
std::vector<Edge> template_matching(const TemplateGraph& t, const VertexSet& z_a, const VertexSet& z_b);

/// Checks balanced deletions: every pair of equal-size subsets of A' and B' when
/// exhaustive, otherwise `samples` random ones.
TemplateVerification verify_template(const TemplateGraph& t, VerifyMode mode, long long samples, std::uint64_t seed, Exec exec = Exec::Parallel);

/// Union of r random perfect matchings on [n] x [n], duplicated; resampled until
/// verification passes. Throws Error(TemplateResampleExceeded).
TemplateGraph build_template(int n, int r, std::uint64_t seed, const TemplateOptions& opt = {}, TemplateVerification* report = nullptr);

/// Gadget for one template edge {x, y}: two f(x)f(y)-paths P, Q (|P| <= |Q|) and
/// the rung connectors between their internal vertices.
struct TwoVertexGadget {
  int tx = 0;  // template B_T vertex
  int ty = 0;  // template A_T vertex
  Path path_p;
  Path path_q;
  std::vector<Edge> rung_pairs;
  std::vector<Path> rungs;  // rungs[i] runs from rung_pairs[i].first to rung_pairs[i].second
  Vertex u = -1;
  Vertex v = -1;
};

/// Rung endpoint pairs of a gadget with the given P and Q (degenerate pairs skipped).
std::vector<Edge> gadget_rung_pairs(const Path& p, const Path& q);
/// Endpoints (u, v) of a gadget from the index formulas.
std::pair<Vertex, Vertex> gadget_endpoints(const Path& p, const Path& q);
/// Expanded u->v traversal; absorbing covers f(x), f(y), the other avoids exactly them.
/// Throws Error(InternalValidation) if the structure does not form such a path.
Path gadget_walk(const TwoVertexGadget& gadget, bool absorbing);

struct AbsorberStructure {
  Vertex a = -1;
  Vertex b = -1;
  TemplateGraph tpl;
  std::vector<Vertex> f_a;  // A_T id -> host vertex
  std::vector<Vertex> f_b;  // B_T id -> host vertex
  VertexSet u_in_a;         // U with side 0
  VertexSet u_in_b;         // U with side 1
  std::vector<TwoVertexGadget> gadgets;  // one per template edge, in chain order
  std::vector<Path> chain;  // a -> u_1, v_1 -> u_2, ..., v_m -> b
  VertexSet w1, w2, w3;
  VertexSet vertices;       // V(H)
};

struct AbsorberParams {
  int r = 20;
  int max_len = 12;
  int connect_budget = 8;
  std::uint64_t seed = 1;
  TemplateOptions tpl;
  /// Lower bound gamma for the |W_A|, |W_B| >= gamma |W| / 4 check.
  double gamma = 0.0;
  /// Pick b adjacent to a when possible.
  bool adjacent_endpoints = false;
  /// Shares of the remaining W given to phases 1, 2 and 3.
  std::array<double, 3> split = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
};

/// Assembles a (U cap A, U cap B)-absorber in the bipartite host `g` with sides `side`
/// (0 = A, 1 = B). Every host edge among U and W must join opposite sides.
AbsorberStructure build_absorber(const Graph& g, const VertexSet& u, const VertexSet& w, const std::vector<std::uint8_t>& side,
                                 const AbsorberParams& params);

/// An a-b path with vertex set exactly V(H) \ (X' u Y'), recounted against `g`.
Path absorb(const Graph& g, const AbsorberStructure& abs, const VertexSet& x_prime, const VertexSet& y_prime);

struct AbsorberReport {
  int total = 0;
  int passed = 0;
  std::string counterexample;
};

/// absorb on the empty and the largest balanced request plus `trials` random ones.
AbsorberReport verify_absorber(const Graph& g, const AbsorberStructure& abs, int trials, std::uint64_t seed, Exec exec = Exec::Parallel);

}  // namespace cyclecover
