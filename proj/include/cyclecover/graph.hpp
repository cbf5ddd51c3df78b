#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cyclecover {

using Vertex = int;
/// Sorted, duplicate-free vertex ids.
using VertexSet = std::vector<Vertex>;
/// Ordered vertex sequence; consecutive vertices adjacent, no repeats.
using Path = std::vector<Vertex>;
/// Cyclic vertex sequence of length at least 3.
using Cycle = std::vector<Vertex>;
using Edge = std::pair<Vertex, Vertex>;

struct PathForest {
  std::vector<Path> paths;
};

struct CycleCover {
  std::vector<Cycle> cycles;
  int k = 2;
};

/// Immutable simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  enum class Duplicates { Reject, Merge };

  Graph() = default;
  /// Edgeless graph on n vertices.
  explicit Graph(int n);

  /// Builds from an edge list. Self-loops and out-of-range ids are always rejected;
  /// repeated edges are rejected or merged according to `dup`.
  static Graph from_edges(int n, const std::vector<Edge>& edges, Duplicates dup = Duplicates::Reject);

  int n() const { return static_cast<int>(adj_.size()); }
  std::int64_t m() const { return m_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
  bool has_edge(Vertex u, Vertex v) const;
  int min_degree() const;
  int max_degree() const;
  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  /// Subgraph induced on `vs`; vertex vs[i] becomes i.
  Graph induced(const std::vector<Vertex>& vs) const;
  /// Spanning subgraph keeping edges that cross between side 0 and side 1.
  Graph crossing_subgraph(const std::vector<std::uint8_t>& side) const;

  bool operator==(const Graph& other) const { return adj_ == other.adj_; }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::int64_t m_ = 0;
};

/// Sorts and removes duplicates.
VertexSet make_set(std::vector<Vertex> vs);
/// Throws Error(Argument) if any id is outside [0, n) or repeated.
void check_set(int n, const std::vector<Vertex>& vs, const char* what);
std::vector<std::uint8_t> to_mask(int n, const std::vector<Vertex>& vs);
VertexSet from_mask(const std::vector<std::uint8_t>& mask);
/// Vertices of [0, n) not in `vs`.
VertexSet complement(int n, const VertexSet& vs);

/// |{(x, y) in X x Y : xy in E}|.
std::int64_t edge_count_between(const Graph& g, const VertexSet& x, const VertexSet& y);
/// deg(v, S) for a membership mask S.
int degree_into(const Graph& g, Vertex v, const std::vector<std::uint8_t>& mask);

/// N^depth(X, Y): vertices of Y joined to X by a path of length between 1 and
/// depth whose internal vertices lie in Y.
VertexSet ball(const Graph& g, const VertexSet& x, const VertexSet& y, int depth);

/// Largest d such that all but at most floor(xi * n) vertices have degree >= d.
int essential_min_degree(const Graph& g, double xi);

std::vector<std::vector<Vertex>> connected_components(const Graph& g);
bool is_connected(const Graph& g);

bool is_path(const Graph& g, const Path& p);
bool is_cycle(const Graph& g, const Cycle& c);

struct CoverReport {
  bool pass = false;
  std::string violation;
};

CoverReport validate_cycle_cover(const Graph& g, const CycleCover& cover);

struct OracleResult {
  bool exists = false;
  std::optional<CycleCover> witness;
};

/// Exhaustive search for a cover of V(G) by at most k-1 cycles. n <= 12.
OracleResult exact_cycle_cover_oracle(const Graph& g, int k);

/// Edge-list text format: "n m" then m lines "u v" with u < v.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);
Graph load_edge_list(const std::string& path);
void save_edge_list(const std::string& path, const Graph& g);

}  // namespace cyclecover
