#include "cyclecover/connect.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

#include "cyclecover/errors.hpp"
#include "cyclecover/rng.hpp"

namespace cyclecover {

void ConnectionDemand::add(Vertex u, Vertex v, int multiplicity, bool allow_direct) {
  for (int i = 0; i < multiplicity; ++i) edges.push_back(DemandEdge{u, v, allow_direct, -1, -1});
}

VertexSet ConnectionDemand::terminals() const {
  VertexSet t;
  for (const auto& e : edges) {
    t.push_back(e.u);
    t.push_back(e.v);
  }
  return make_set(std::move(t));
}

int ConnectionDemand::max_degree() const {
  std::vector<Vertex> ends;
  for (const auto& e : edges) {
    ends.push_back(e.u);
    ends.push_back(e.v);
  }
  std::sort(ends.begin(), ends.end());
  int best = 0;
  for (std::size_t i = 0; i < ends.size();) {
    std::size_t j = i;
    while (j < ends.size() && ends[j] == ends[i]) ++j;
    best = std::max(best, static_cast<int>(j - i));
    i = j;
  }
  return best;
}

VertexSet reach(const Graph& g, const VertexSet& x, const VertexSet& w, const VertexSet& z, int depth) {
  auto mask = to_mask(g.n(), w);
  for (Vertex v : z) {
    if (v < 0 || v >= g.n()) throw Error(ErrorCode::Argument, "reach: vertex out of range");
    mask[static_cast<std::size_t>(v)] = 0;
  }
  return ball(g, x, from_mask(mask), depth);
}

std::vector<int> growth_profile(const Graph& g, const VertexSet& x, const VertexSet& w, const VertexSet& z, int max_depth) {
  auto mask = to_mask(g.n(), w);
  for (Vertex v : z) mask[static_cast<std::size_t>(v)] = 0;
  check_set(g.n(), x, "growth_profile");
  std::vector<std::uint8_t> reached(static_cast<std::size_t>(g.n()), 0);
  std::vector<Vertex> frontier = x, next;
  std::vector<int> sizes;
  int total = 0;
  for (int level = 1; level <= max_depth; ++level) {
    next.clear();
    for (Vertex v : frontier) {
      for (Vertex u : g.neighbors(v)) {
        const auto su = static_cast<std::size_t>(u);
        if (mask[su] && !reached[su]) {
          reached[su] = 1;
          next.push_back(u);
        }
      }
    }
    total += static_cast<int>(next.size());
    sizes.push_back(total);
    frontier.swap(next);
  }
  return sizes;
}

PathFinder::PathFinder(const Graph& g)
    : g_(g),
      du_(static_cast<std::size_t>(g.n())),
      dv_(static_cast<std::size_t>(g.n())),
      pu_(static_cast<std::size_t>(g.n())),
      pv_(static_cast<std::size_t>(g.n())),
      stamp_u_(static_cast<std::size_t>(g.n()), 0),
      stamp_v_(static_cast<std::size_t>(g.n()), 0) {}

std::optional<Path> PathFinder::find(Vertex u, Vertex v, const std::vector<std::uint8_t>& allowed, int max_len, bool allow_direct,
                                     const std::vector<std::uint8_t>* entry_u, const std::vector<std::uint8_t>* entry_v) {
  if (u == v) throw Error(ErrorCode::Argument, "find_path: endpoints must differ");
  if (max_len >= 1 && allow_direct && g_.has_edge(u, v)) return Path{u, v};
  if (max_len < 2) return std::nullopt;
  if (++epoch_ == 0) {
    std::fill(stamp_u_.begin(), stamp_u_.end(), 0);
    std::fill(stamp_v_.begin(), stamp_v_.end(), 0);
    epoch_ = 1;
  }
  auto ok = [&](Vertex w) { return allowed[static_cast<std::size_t>(w)] && w != u && w != v; };
  std::vector<Vertex> front_u{u}, front_v{v}, next;
  int depth_u = 0, depth_v = 0;
  int best = std::numeric_limits<int>::max();
  Vertex meet = -1;
  while (depth_u + depth_v < max_len && (!front_u.empty() || !front_v.empty())) {
    bool side_u = front_v.empty() || (!front_u.empty() && front_u.size() <= front_v.size());
    auto& front = side_u ? front_u : front_v;
    auto& dist = side_u ? du_ : dv_;
    auto& par = side_u ? pu_ : pv_;
    auto& stamp = side_u ? stamp_u_ : stamp_v_;
    const auto& odist = side_u ? dv_ : du_;
    const auto& ostamp = side_u ? stamp_v_ : stamp_u_;
    const auto* entry = side_u ? entry_u : entry_v;
    int& depth = side_u ? depth_u : depth_v;
    next.clear();
    for (Vertex x : front) {
      for (Vertex w : g_.neighbors(x)) {
        const auto sw = static_cast<std::size_t>(w);
        if (!ok(w) || stamp[sw] == epoch_) continue;
        if (depth == 0 && entry && !(*entry)[sw]) continue;
        stamp[sw] = epoch_;
        dist[sw] = depth + 1;
        par[sw] = x;
        next.push_back(w);
        if (ostamp[sw] == epoch_) {
          int len = depth + 1 + odist[sw];
          if (len <= max_len && len < best) {
            best = len;
            meet = w;
          }
        }
      }
    }
    ++depth;
    front.swap(next);
    if (meet >= 0) break;
  }
  if (meet < 0) return std::nullopt;
  Path left;
  for (Vertex x = meet; x != u; x = pu_[static_cast<std::size_t>(x)]) left.push_back(x);
  left.push_back(u);
  std::reverse(left.begin(), left.end());
  for (Vertex x = pv_[static_cast<std::size_t>(meet)]; ; x = pv_[static_cast<std::size_t>(x)]) {
    left.push_back(x);
    if (x == v) break;
  }
  return left;
}

std::optional<Path> find_path_avoiding(const Graph& g, Vertex u, Vertex v, const VertexSet& w, const VertexSet& z, int max_len) {
  if (u < 0 || v < 0 || u >= g.n() || v >= g.n()) throw Error(ErrorCode::Argument, "find_path_avoiding: endpoint out of range");
  auto mask = to_mask(g.n(), w);
  if (mask[static_cast<std::size_t>(u)] || mask[static_cast<std::size_t>(v)]) {
    throw Error(ErrorCode::Argument, "find_path_avoiding: endpoints must lie outside W");
  }
  for (Vertex x : z) {
    if (x < 0 || x >= g.n()) throw Error(ErrorCode::Argument, "find_path_avoiding: vertex out of range");
    mask[static_cast<std::size_t>(x)] = 0;
  }
  PathFinder pf(g);
  return pf.find(u, v, mask, max_len, true);
}

std::string check_path_system(const Graph& g, const ConnectionDemand& demand, const VertexSet& w, int max_len, const PathSystem& ps) {
  if (ps.routes.size() != demand.edges.size()) return "route count differs from demand count";
  auto wmask = to_mask(g.n(), w);
  std::vector<std::uint8_t> used(static_cast<std::size_t>(g.n()), 0);
  std::set<Edge> direct;
  VertexSet internal;
  for (std::size_t i = 0; i < ps.routes.size(); ++i) {
    const Path& p = ps.routes[i];
    const auto& d = demand.edges[i];
    const std::string tag = "route " + std::to_string(i) + ": ";
    if (p.size() < 2 || p.front() != d.u || p.back() != d.v) return tag + "wrong endpoints";
    if (!is_path(g, p)) return tag + "not a path of the host graph";
    if (static_cast<int>(p.size()) - 1 > max_len) return tag + "longer than the length bound";
    if (p.size() == 2) {
      if (!d.allow_direct) return tag + "direct edge not permitted";
      if (!direct.insert({std::min(d.u, d.v), std::max(d.u, d.v)}).second) return tag + "direct edge used twice";
    }
    for (std::size_t j = 1; j + 1 < p.size(); ++j) {
      const auto sx = static_cast<std::size_t>(p[j]);
      if (!wmask[sx]) return tag + "internal vertex outside W";
      if (used[sx]++) return tag + "internal vertex " + std::to_string(p[j]) + " shared";
      internal.push_back(p[j]);
    }
    if (p.size() > 2) {
      if (d.entry_u >= 0 && !demand.entry_sets[static_cast<std::size_t>(d.entry_u)][static_cast<std::size_t>(p[1])]) return tag + "entry constraint at u";
      if (d.entry_v >= 0 && !demand.entry_sets[static_cast<std::size_t>(d.entry_v)][static_cast<std::size_t>(p[p.size() - 2])]) {
        return tag + "entry constraint at v";
      }
    }
  }
  if (make_set(internal) != ps.used_internal) return "used_internal does not match the routes";
  return {};
}

PathSystem connect_all(const Graph& g, const ConnectionDemand& demand, const VertexSet& w, const ConnectOptions& opt) {
  const int n = g.n();
  auto wmask = to_mask(n, w);
  const std::size_t nd = demand.edges.size();
  std::set<Edge> adjacent_pairs;
  std::size_t need_internal = 0;
  for (const auto& d : demand.edges) {
    if (d.u < 0 || d.v < 0 || d.u >= n || d.v >= n || d.u == d.v) throw Error(ErrorCode::Argument, "connect_all: invalid demand endpoints");
    if (wmask[static_cast<std::size_t>(d.u)] || wmask[static_cast<std::size_t>(d.v)]) {
      throw Error(ErrorCode::Argument, "connect_all: demand endpoint inside W");
    }
    for (int e : {d.entry_u, d.entry_v}) {
      if (e >= static_cast<int>(demand.entry_sets.size())) throw Error(ErrorCode::Argument, "connect_all: entry set index out of range");
    }
    Edge key{std::min(d.u, d.v), std::max(d.u, d.v)};
    if (d.allow_direct && g.has_edge(d.u, d.v) && adjacent_pairs.insert(key).second) continue;
    ++need_internal;
  }
  if (need_internal > w.size()) {
    throw Error(ErrorCode::ConnectivityExhausted, "connect_all: " + std::to_string(need_internal) +
                                                      " demands need an internal vertex but |W| = " + std::to_string(w.size()));
  }
  PathFinder finder(g);
  Rng root(opt.seed);
  std::string last_diag = "no attempt made";
  const int budget = std::max(1, opt.budget);
  for (int restart = 0; restart < budget; ++restart) {
    Rng rng = root.derive(static_cast<std::uint64_t>(restart));
    std::vector<int> order(nd);
    for (std::size_t i = 0; i < nd; ++i) order[i] = static_cast<int>(i);
    rng.shuffle(order);
    std::deque<int> queue(order.begin(), order.end());
    std::vector<Path> routes(nd);
    std::vector<std::uint8_t> routed(nd, 0);
    std::vector<int> radius(nd, 1);
    std::vector<int> history;  // routing order of currently routed demands
    std::vector<std::uint8_t> free_mask = wmask;
    std::set<Edge> direct_used;
    long long rollbacks = 0;
    const long long max_rollbacks = static_cast<long long>(opt.max_rollbacks_factor) * static_cast<long long>(std::max<std::size_t>(nd, 1));
    bool failed = false;

    auto rip = [&](int i) {
      const Path& p = routes[static_cast<std::size_t>(i)];
      if (p.size() == 2) direct_used.erase({std::min(p[0], p[1]), std::max(p[0], p[1])});
      for (std::size_t j = 1; j + 1 < p.size(); ++j) free_mask[static_cast<std::size_t>(p[j])] = 1;
      routes[static_cast<std::size_t>(i)].clear();
      routed[static_cast<std::size_t>(i)] = 0;
      history.erase(std::find(history.begin(), history.end(), i));
    };

    while (!queue.empty()) {
      int i = queue.front();
      queue.pop_front();
      const auto& d = demand.edges[static_cast<std::size_t>(i)];
      Edge key{std::min(d.u, d.v), std::max(d.u, d.v)};
      bool direct_ok = d.allow_direct && !direct_used.count(key);
      const auto* eu = d.entry_u >= 0 ? &demand.entry_sets[static_cast<std::size_t>(d.entry_u)] : nullptr;
      const auto* ev = d.entry_v >= 0 ? &demand.entry_sets[static_cast<std::size_t>(d.entry_v)] : nullptr;
      auto path = finder.find(d.u, d.v, free_mask, opt.max_len, direct_ok, eu, ev);
      if (path) {
        if (path->size() == 2) direct_used.insert(key);
        for (std::size_t j = 1; j + 1 < path->size(); ++j) free_mask[static_cast<std::size_t>((*path)[j])] = 0;
        routes[static_cast<std::size_t>(i)] = std::move(*path);
        routed[static_cast<std::size_t>(i)] = 1;
        history.push_back(i);
        continue;
      }
      // Rip up the most recent routes that touch the stuck pair's neighbourhood in W.
      auto region = to_mask(n, ball(g, {std::min(d.u, d.v), std::max(d.u, d.v)}, w, opt.max_len));
      std::vector<int> victims;
      for (auto it = history.rbegin(); it != history.rend() && static_cast<int>(victims.size()) < radius[static_cast<std::size_t>(i)]; ++it) {
        const Path& p = routes[static_cast<std::size_t>(*it)];
        bool touches = p.size() == 2 && Edge{std::min(p[0], p[1]), std::max(p[0], p[1])} == key;
        for (std::size_t j = 1; j + 1 < p.size() && !touches; ++j) touches = region[static_cast<std::size_t>(p[j])] != 0;
        if (touches) victims.push_back(*it);
      }
      if (victims.empty() || ++rollbacks > max_rollbacks) {
        auto ru = reach(g, {d.u}, from_mask(free_mask), {}, opt.max_len);
        auto rv = reach(g, {d.v}, from_mask(free_mask), {}, opt.max_len);
        last_diag = "stuck demand " + std::to_string(d.u) + "-" + std::to_string(d.v) + " (reach sizes " + std::to_string(ru.size()) + ", " +
                    std::to_string(rv.size()) + ", routed " + std::to_string(history.size()) + "/" + std::to_string(nd) + ")";
        failed = true;
        break;
      }
      radius[static_cast<std::size_t>(i)] *= 2;
      for (int vct : victims) rip(vct);
      queue.push_front(i);
      for (int vct : victims) queue.push_back(vct);
    }
    if (failed) continue;
    PathSystem ps;
    ps.routes = std::move(routes);
    VertexSet internal;
    for (const auto& p : ps.routes) {
      for (std::size_t j = 1; j + 1 < p.size(); ++j) internal.push_back(p[j]);
    }
    ps.used_internal = make_set(std::move(internal));
    std::string err = check_path_system(g, demand, w, opt.max_len, ps);
    if (!err.empty()) throw Error(ErrorCode::InternalValidation, "connect_all: " + err);
    return ps;
  }
  throw Error(ErrorCode::ConnectivityExhausted, "connect_all: budget exhausted; " + last_diag);
}

int default_connect_length(int n, double gamma) {
  double ln = std::log(std::max(n, 16));
  return static_cast<int>(std::ceil(30.0 * ln / (gamma * std::log(ln))));
}

int ball_growth_length(int n, double gamma) {
  double ln = std::log(std::max(n, 16));
  return static_cast<int>(std::ceil(10.0 * ln / (gamma * std::log(ln))));
}

namespace {

bool saturating_matching(const SmallHypergraph& h, int a, std::uint32_t used, const std::vector<std::vector<std::uint32_t>>& by_a) {
  if (a == h.na) return true;
  for (std::uint32_t m : by_a[static_cast<std::size_t>(a)]) {
    if ((m & used) == 0 && saturating_matching(h, a + 1, used | m, by_a)) return true;
  }
  return false;
}

}  // namespace

HaxellCheck haxell_check_small(const SmallHypergraph& h) {
  if (h.na < 0 || h.nb < 0 || h.na + h.nb > 14) throw Error(ErrorCode::SizeLimit, "haxell_check_small: |A| + |B| > 14");
  HaxellCheck out;
  std::vector<std::vector<std::uint32_t>> by_a(static_cast<std::size_t>(h.na));
  int r = -1;
  for (auto [a, m] : h.edges) {
    if (a < 0 || a >= h.na || (h.nb < 32 && (m >> h.nb) != 0)) throw Error(ErrorCode::Argument, "haxell_check_small: edge out of range");
    int size = __builtin_popcount(m) + 1;
    if (r >= 0 && size != r) throw Error(ErrorCode::Argument, "haxell_check_small: hypergraph is not uniform");
    r = size;
    by_a[static_cast<std::size_t>(a)].push_back(m);
  }
  out.r = r < 0 ? 2 : r;
  out.matching_exists = saturating_matching(h, 0, 0, by_a);
  out.condition_holds = true;
  const std::uint32_t zcount = 1u << h.nb;
  for (std::uint32_t s = 1; s < (1u << h.na) && out.condition_holds; ++s) {
    const int limit = (2 * out.r - 3) * (__builtin_popcount(s) - 1);
    for (std::uint32_t z = 0; z < zcount; ++z) {
      if (__builtin_popcount(z) > limit) continue;
      bool some_edge = false;
      for (auto [a, m] : h.edges) {
        if ((s >> a & 1u) && (m & z) == 0) {
          some_edge = true;
          break;
        }
      }
      if (!some_edge) {
        out.condition_holds = false;
        break;
      }
    }
  }
  return out;
}

}  // namespace cyclecover
