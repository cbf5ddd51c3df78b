#include "cyclecover/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cyclecover/errors.hpp"

namespace cyclecover {

Graph::Graph(int n) {
  if (n < 0) throw Error(ErrorCode::Argument, "graph: negative vertex count");
  adj_.resize(static_cast<std::size_t>(n));
}

Graph Graph::from_edges(int n, const std::vector<Edge>& edges, Duplicates dup) {
  Graph g(n);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw Error(ErrorCode::Argument, "graph: edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
    }
    if (u == v) throw Error(ErrorCode::Argument, "graph: self-loop at " + std::to_string(u));
    g.adj_[static_cast<std::size_t>(u)].push_back(v);
    g.adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (int v = 0; v < n; ++v) {
    auto& a = g.adj_[static_cast<std::size_t>(v)];
    std::sort(a.begin(), a.end());
    auto it = std::unique(a.begin(), a.end());
    if (it != a.end()) {
      if (dup == Duplicates::Reject) {
        throw Error(ErrorCode::Argument, "graph: duplicate edge at vertex " + std::to_string(v));
      }
      a.erase(it, a.end());
    }
    g.m_ += static_cast<std::int64_t>(a.size());
  }
  g.m_ /= 2;
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto& a = adj_[static_cast<std::size_t>(u)];
  const auto& b = adj_[static_cast<std::size_t>(v)];
  if (a.size() <= b.size()) return std::binary_search(a.begin(), a.end(), v);
  return std::binary_search(b.begin(), b.end(), u);
}

int Graph::min_degree() const {
  int d = n() == 0 ? 0 : degree(0);
  for (int v = 1; v < n(); ++v) d = std::min(d, degree(v));
  return d;
}

int Graph::max_degree() const {
  int d = 0;
  for (int v = 0; v < n(); ++v) d = std::max(d, degree(v));
  return d;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (int u = 0; u < n(); ++u) {
    for (int v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::induced(const std::vector<Vertex>& vs) const {
  std::vector<int> index(static_cast<std::size_t>(n()), -1);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    Vertex v = vs[i];
    if (v < 0 || v >= n() || index[static_cast<std::size_t>(v)] != -1) {
      throw Error(ErrorCode::Argument, "induced: invalid or repeated vertex " + std::to_string(v));
    }
    index[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  Graph h(static_cast<int>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) {
    auto& a = h.adj_[i];
    for (Vertex w : neighbors(vs[i])) {
      int j = index[static_cast<std::size_t>(w)];
      if (j >= 0) a.push_back(j);
    }
    std::sort(a.begin(), a.end());
    h.m_ += static_cast<std::int64_t>(a.size());
  }
  h.m_ /= 2;
  return h;
}

Graph Graph::crossing_subgraph(const std::vector<std::uint8_t>& side) const {
  if (side.size() != adj_.size()) throw Error(ErrorCode::Argument, "crossing_subgraph: side vector size mismatch");
  Graph h(n());
  for (int v = 0; v < n(); ++v) {
    for (Vertex w : neighbors(v)) {
      if (side[static_cast<std::size_t>(v)] != side[static_cast<std::size_t>(w)]) h.adj_[static_cast<std::size_t>(v)].push_back(w);
    }
    h.m_ += static_cast<std::int64_t>(h.adj_[static_cast<std::size_t>(v)].size());
  }
  h.m_ /= 2;
  return h;
}

VertexSet make_set(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

void check_set(int n, const std::vector<Vertex>& vs, const char* what) {
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
  for (Vertex v : vs) {
    if (v < 0 || v >= n) throw Error(ErrorCode::Argument, std::string(what) + ": vertex id out of range: " + std::to_string(v));
    if (seen[static_cast<std::size_t>(v)]++) throw Error(ErrorCode::Argument, std::string(what) + ": repeated vertex " + std::to_string(v));
  }
}

std::vector<std::uint8_t> to_mask(int n, const std::vector<Vertex>& vs) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n), 0);
  for (Vertex v : vs) {
    if (v < 0 || v >= n) throw Error(ErrorCode::Argument, "vertex id out of range: " + std::to_string(v));
    mask[static_cast<std::size_t>(v)] = 1;
  }
  return mask;
}

VertexSet from_mask(const std::vector<std::uint8_t>& mask) {
  VertexSet out;
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (mask[v]) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

VertexSet complement(int n, const VertexSet& vs) {
  auto mask = to_mask(n, vs);
  VertexSet out;
  for (int v = 0; v < n; ++v) {
    if (!mask[static_cast<std::size_t>(v)]) out.push_back(v);
  }
  return out;
}

std::int64_t edge_count_between(const Graph& g, const VertexSet& x, const VertexSet& y) {
  auto ymask = to_mask(g.n(), y);
  std::int64_t count = 0;
  for (Vertex v : x) {
    if (v < 0 || v >= g.n()) throw Error(ErrorCode::Argument, "edge_count_between: vertex id out of range");
    count += degree_into(g, v, ymask);
  }
  return count;
}

int degree_into(const Graph& g, Vertex v, const std::vector<std::uint8_t>& mask) {
  int d = 0;
  for (Vertex w : g.neighbors(v)) d += mask[static_cast<std::size_t>(w)] ? 1 : 0;
  return d;
}

VertexSet ball(const Graph& g, const VertexSet& x, const VertexSet& y, int depth) {
  if (depth < 1) throw Error(ErrorCode::Argument, "ball: depth must be at least 1");
  auto ymask = to_mask(g.n(), y);
  check_set(g.n(), x, "ball");
  std::vector<std::uint8_t> reached(static_cast<std::size_t>(g.n()), 0);
  std::vector<Vertex> frontier = x;
  std::vector<Vertex> next;
  for (int level = 1; level <= depth && !frontier.empty(); ++level) {
    next.clear();
    for (Vertex v : frontier) {
      for (Vertex w : g.neighbors(v)) {
        if (ymask[static_cast<std::size_t>(w)] && !reached[static_cast<std::size_t>(w)]) {
          reached[static_cast<std::size_t>(w)] = 1;
          next.push_back(w);
        }
      }
    }
    frontier.swap(next);
  }
  return from_mask(reached);
}

int essential_min_degree(const Graph& g, double xi) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw Error(ErrorCode::Argument, "essential_min_degree: xi must lie in [0, 1]");
  if (g.n() == 0) return 0;
  std::vector<int> deg(static_cast<std::size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
  std::sort(deg.begin(), deg.end());
  auto skip = static_cast<std::size_t>(std::floor(xi * g.n() + 1e-9));
  return deg[std::min(skip, deg.size() - 1)];
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<int> comp(static_cast<std::size_t>(g.n()), -1);
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> stack;
  for (int s = 0; s < g.n(); ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    comp[static_cast<std::size_t>(s)] = id;
    stack.assign(1, s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

bool is_path(const Graph& g, const Path& p) {
  if (p.empty()) return false;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(g.n()), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    Vertex v = p[i];
    if (v < 0 || v >= g.n() || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
    if (i > 0 && !g.has_edge(p[i - 1], v)) return false;
  }
  return true;
}

bool is_cycle(const Graph& g, const Cycle& c) {
  return c.size() >= 3 && is_path(g, c) && g.has_edge(c.back(), c.front());
}

CoverReport validate_cycle_cover(const Graph& g, const CycleCover& cover) {
  CoverReport report;
  if (static_cast<int>(cover.cycles.size()) > cover.k - 1) {
    report.violation = "too many cycles: " + std::to_string(cover.cycles.size()) + " > k-1 = " + std::to_string(cover.k - 1);
    return report;
  }
  std::vector<std::uint8_t> covered(static_cast<std::size_t>(g.n()), 0);
  for (std::size_t i = 0; i < cover.cycles.size(); ++i) {
    const Cycle& c = cover.cycles[i];
    if (c.size() < 3) {
      report.violation = "cycle " + std::to_string(i) + " has fewer than 3 vertices";
      return report;
    }
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(g.n()), 0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      Vertex v = c[j];
      if (v < 0 || v >= g.n()) {
        report.violation = "cycle " + std::to_string(i) + " has out-of-range vertex " + std::to_string(v);
        return report;
      }
      if (seen[static_cast<std::size_t>(v)]++) {
        report.violation = "cycle " + std::to_string(i) + " repeats vertex " + std::to_string(v);
        return report;
      }
      Vertex w = c[(j + 1) % c.size()];
      if (w < 0 || w >= g.n() || !g.has_edge(v, w)) {
        report.violation = "cycle " + std::to_string(i) + " uses non-edge " + std::to_string(v) + "-" + std::to_string(w);
        return report;
      }
      covered[static_cast<std::size_t>(v)] = 1;
    }
  }
  for (int v = 0; v < g.n(); ++v) {
    if (!covered[static_cast<std::size_t>(v)]) {
      report.violation = "vertex " + std::to_string(v) + " uncovered";
      return report;
    }
  }
  report.pass = true;
  return report;
}

namespace {

// ends[mask]: bitmask of vertices v such that G[mask] has a Hamilton path from
// the lowest vertex of mask to v.
std::vector<std::uint32_t> hamilton_path_ends(const std::vector<std::uint32_t>& nbr, int n) {
  std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
  for (int s = 0; s < n; ++s) ends[std::size_t{1} << s] = 1u << s;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::uint32_t e = ends[mask];
    if (!e) continue;
    int s = __builtin_ctz(mask);
    for (std::uint32_t rest = e; rest; rest &= rest - 1) {
      int v = __builtin_ctz(rest);
      // Extend only by vertices above the start so each set has one canonical start.
      std::uint32_t cand = nbr[static_cast<std::size_t>(v)] & ~mask & ~((2u << s) - 1);
      for (; cand; cand &= cand - 1) {
        int w = __builtin_ctz(cand);
        ends[mask | (1u << w)] |= 1u << w;
      }
    }
  }
  return ends;
}

Cycle reconstruct_cycle(const std::vector<std::uint32_t>& ends, const std::vector<std::uint32_t>& nbr, std::uint32_t mask) {
  int s = __builtin_ctz(mask);
  std::uint32_t closing = ends[mask] & nbr[static_cast<std::size_t>(s)];
  int v = __builtin_ctz(closing);
  Cycle rev;
  std::uint32_t cur = mask;
  while (true) {
    rev.push_back(v);
    if (v == s) break;
    std::uint32_t prev_mask = cur & ~(1u << v);
    std::uint32_t cand = ends[prev_mask] & nbr[static_cast<std::size_t>(v)];
    v = __builtin_ctz(cand);
    cur = prev_mask;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

}  // namespace

OracleResult exact_cycle_cover_oracle(const Graph& g, int k) {
  const int n = g.n();
  if (n > 12) throw Error(ErrorCode::SizeLimit, "exact_cycle_cover_oracle: n > 12");
  OracleResult result;
  const std::uint32_t full = n == 0 ? 0 : (1u << n) - 1;
  if (full == 0) {
    result.exists = k >= 1;
    if (result.exists) result.witness = CycleCover{{}, k};
    return result;
  }
  if (k < 2) return result;
  std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    for (Vertex w : g.neighbors(v)) nbr[static_cast<std::size_t>(v)] |= 1u << w;
  }
  auto ends = hamilton_path_ends(nbr, n);
  std::vector<std::uint32_t> cycle_sets;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (__builtin_popcount(mask) < 3) continue;
    int s = __builtin_ctz(mask);
    if (ends[mask] & nbr[static_cast<std::size_t>(s)]) cycle_sets.push_back(mask);
  }
  // Breadth-first search over unions of cycle vertex sets.
  std::vector<int> dist(std::size_t{full} + 1, -1);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> parent(std::size_t{full} + 1);
  dist[0] = 0;
  std::vector<std::uint32_t> frontier{0};
  for (int step = 1; step <= k - 1 && dist[full] < 0 && !frontier.empty(); ++step) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t u : frontier) {
      for (std::uint32_t c : cycle_sets) {
        if (u & c) continue;
        std::uint32_t w = u | c;
        if (dist[w] < 0) {
          dist[w] = step;
          parent[w] = {u, c};
          next.push_back(w);
        }
      }
    }
    frontier.swap(next);
  }
  if (dist[full] < 0) return result;
  result.exists = true;
  CycleCover cover;
  cover.k = k;
  for (std::uint32_t cur = full; cur != 0; cur = parent[cur].first) {
    cover.cycles.push_back(reconstruct_cycle(ends, nbr, parent[cur].second));
  }
  std::reverse(cover.cycles.begin(), cover.cycles.end());
  result.witness = std::move(cover);
  return result;
}

Graph read_edge_list(std::istream& in) {
  long long n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw Error(ErrorCode::Io, "edge list: malformed header");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u, v;
    if (!(in >> u >> v)) throw Error(ErrorCode::Io, "edge list: expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    if (u == v) throw Error(ErrorCode::Io, "edge list: self-loop at " + std::to_string(u));
    if (u > v) throw Error(ErrorCode::Io, "edge list: line " + std::to_string(i + 2) + " must have u < v");
    if (u < 0 || v >= n) throw Error(ErrorCode::Io, "edge list: vertex out of range on line " + std::to_string(i + 2));
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  std::string trailing;
  if (in >> trailing) throw Error(ErrorCode::Io, "edge list: trailing content after " + std::to_string(m) + " edges");
  try {
    return Graph::from_edges(static_cast<int>(n), edges, Graph::Duplicates::Reject);
  } catch (const Error& e) {
    throw Error(ErrorCode::Io, std::string("edge list: ") + e.what());
  }
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return read_edge_list(in);
}

void save_edge_list(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  write_edge_list(out, g);
}

}  // namespace cyclecover
