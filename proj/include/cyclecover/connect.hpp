#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclecover/graph.hpp"

namespace cyclecover {

/// One demand instance. entry_u / entry_v index ConnectionDemand::entry_sets and,
/// when set, force the internal vertex next to u (resp. v) into that set.
struct DemandEdge {
  Vertex u = 0;
  Vertex v = 0;
  bool allow_direct = true;
  int entry_u = -1;
  int entry_v = -1;
};

struct ConnectionDemand {
  std::vector<DemandEdge> edges;  // multiset; parallel demands allowed
  std::vector<std::vector<std::uint8_t>> entry_sets;

  void add(Vertex u, Vertex v, int multiplicity = 1, bool allow_direct = true);
  VertexSet terminals() const;
  int max_degree() const;
};

struct PathSystem {
  std::vector<Path> routes;  // routes[i] serves demand.edges[i], oriented from u to v
  VertexSet used_internal;
};

/// N^depth(X, W \ Z).
VertexSet reach(const Graph& g, const VertexSet& x, const VertexSet& w, const VertexSet& z, int depth);

/// |N^i(X, W \ Z)| for i = 1..max_depth.
std::vector<int> growth_profile(const Graph& g, const VertexSet& x, const VertexSet& w, const VertexSet& z, int max_depth);

/// Shortest u-v path of length <= max_len whose internal vertices lie in W \ Z,
/// found by bidirectional breadth-first search. A direct edge is a length-1 result.
std::optional<Path> find_path_avoiding(const Graph& g, Vertex u, Vertex v, const VertexSet& w, const VertexSet& z, int max_len);

/// Reusable bidirectional search over an explicit allowed-vertex mask.
class PathFinder {
 public:
  explicit PathFinder(const Graph& g);

  /// allowed: candidate internal vertices. entry sets may be null.
  std::optional<Path> find(Vertex u, Vertex v, const std::vector<std::uint8_t>& allowed, int max_len, bool allow_direct,
                           const std::vector<std::uint8_t>* entry_u = nullptr, const std::vector<std::uint8_t>* entry_v = nullptr);

 private:
  const Graph& g_;
  std::vector<int> du_, dv_, pu_, pv_;
  std::vector<std::uint32_t> stamp_u_, stamp_v_;
  std::uint32_t epoch_ = 0;
};

struct ConnectOptions {
  int max_len = 10;
  int budget = 8;  // full restarts
  std::uint64_t seed = 1;
  int max_rollbacks_factor = 20;  // rollbacks per restart = factor * #demands
};

/// Routes every demand through W with internally disjoint paths of length <= max_len.
/// Greedy in random order; a stuck demand rips up recently routed paths near its
/// endpoints (1, 2, 4, ... of them) and retries; then full restarts.
/// Throws Error(ConnectivityExhausted) with diagnostics after the budget.
PathSystem connect_all(const Graph& g, const ConnectionDemand& demand, const VertexSet& w, const ConnectOptions& opt);

/// Full recount of the path-system invariants; returns the first violation or empty.
std::string check_path_system(const Graph& g, const ConnectionDemand& demand, const VertexSet& w, int max_len, const PathSystem& ps);

/// ceil(30 ln n / (gamma ln ln n)).
int default_connect_length(int n, double gamma);
/// ceil(10 ln n / (gamma ln ln n)).
int ball_growth_length(int n, double gamma);

struct SmallHypergraph {
  int na = 0;
  int nb = 0;
  /// Each edge: one A-vertex and a mask of B-vertices; all masks of equal size r - 1.
  std::vector<std::pair<int, std::uint32_t>> edges;
};

struct HaxellCheck {
  bool matching_exists = false;
  bool condition_holds = false;
  int r = 0;
};

/// Exhaustive check of the A-saturating matching and of the condition
/// "for all S subset A and Z subset B with |Z| <= (2r - 3)(|S| - 1) some edge meets S and avoids Z".
/// Requires na + nb <= 14.
HaxellCheck haxell_check_small(const SmallHypergraph& h);

}  // namespace cyclecover
