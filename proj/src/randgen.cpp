#include "cyclecover/randgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "cyclecover/errors.hpp"
#include "cyclecover/rng.hpp"

namespace cyclecover {

namespace {

void gnp_row(int n, double p, int i, Rng rng, std::vector<Vertex>& out) {
  out.clear();
  for (int j = i + 1; j < n; ++j) {
    if (rng.bernoulli(p)) out.push_back(j);
  }
}

}  // namespace

Graph gnp(int n, double p, std::uint64_t seed, Exec exec) {
  if (n < 0) throw Error(ErrorCode::Argument, "gnp: negative n");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::Argument, "gnp: p must lie in [0, 1]");
  Rng root(seed);
  std::vector<std::vector<Vertex>> rows(static_cast<std::size_t>(n));
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (int i = 0; i < n; ++i) gnp_row(n, p, i, root.derive(static_cast<std::uint64_t>(i)), rows[static_cast<std::size_t>(i)]);
  } else {
    for (int i = 0; i < n; ++i) gnp_row(n, p, i, root.derive(static_cast<std::uint64_t>(i)), rows[static_cast<std::size_t>(i)]);
  }
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (Vertex j : rows[static_cast<std::size_t>(i)]) edges.emplace_back(i, j);
  }
  return Graph::from_edges(n, edges);
}

PlantedInstance planted_blocks(int k, int n, double p, std::uint64_t seed) {
  if (k < 1 || n < 0) throw Error(ErrorCode::Argument, "planted_blocks: need k >= 1 and n >= 0");
  PlantedInstance inst;
  inst.block.resize(static_cast<std::size_t>(n));
  std::vector<Edge> edges;
  int offset = 0;
  for (int b = 0; b < k; ++b) {
    int size = n / k + (b < n % k ? 1 : 0);
    Graph part = gnp(size, p, derive_seed(seed, static_cast<std::uint64_t>(b)));
    for (auto [u, v] : part.edges()) edges.emplace_back(u + offset, v + offset);
    for (int i = 0; i < size; ++i) inst.block[static_cast<std::size_t>(offset + i)] = b;
    offset += size;
  }
  inst.graph = Graph::from_edges(n, edges);
  return inst;
}

Graph random_regular(int n, int d, std::uint64_t seed) {
  if (n < 0 || d < 0 || d >= std::max(n, 1) || (static_cast<std::int64_t>(n) * d) % 2 != 0) {
    throw Error(ErrorCode::Argument, "random_regular: need 0 <= d < n and n*d even");
  }
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Vertex> points;
    points.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
    for (int v = 0; v < n; ++v) {
      for (int i = 0; i < d; ++i) points.push_back(v);
    }
    std::set<Edge> edges;
    bool stuck = false;
    while (!points.empty() && !stuck) {
      bool paired = false;
      for (int tries = 0; tries < 64 && !paired; ++tries) {
        auto i = static_cast<std::size_t>(rng.below(points.size()));
        auto j = static_cast<std::size_t>(rng.below(points.size()));
        Vertex u = points[i], v = points[j];
        if (i == j || u == v || edges.count({std::min(u, v), std::max(u, v)})) continue;
        edges.insert({std::min(u, v), std::max(u, v)});
        if (i < j) std::swap(i, j);
        points[i] = points.back();
        points.pop_back();
        points[j] = points.back();
        points.pop_back();
        paired = true;
      }
      if (!paired) {
        // Check whether any legal pair remains before giving up on this attempt.
        bool any = false;
        for (std::size_t i = 0; i < points.size() && !any; ++i) {
          for (std::size_t j = i + 1; j < points.size() && !any; ++j) {
            Vertex u = points[i], v = points[j];
            any = u != v && !edges.count({std::min(u, v), std::max(u, v)});
          }
        }
        stuck = !any;
      }
    }
    if (!stuck) return Graph::from_edges(n, std::vector<Edge>(edges.begin(), edges.end()));
  }
  throw Error(ErrorCode::Argument, "random_regular: pairing failed repeatedly");
}

BipartiteInstance bipartite_double_cover(const Graph& g) {
  const int n = g.n();
  BipartiteInstance out;
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    edges.emplace_back(u, v + n);
    edges.emplace_back(v, u + n);
  }
  out.graph = Graph::from_edges(2 * n, edges);
  out.side.assign(static_cast<std::size_t>(2 * n), 0);
  std::fill(out.side.begin() + n, out.side.end(), 1);
  return out;
}

std::string to_string(AdversaryStrategy s) {
  switch (s) {
    case AdversaryStrategy::RandomDeletion: return "random";
    case AdversaryStrategy::BipartiteSplit: return "bipartite-split";
    case AdversaryStrategy::CliqueSplit: return "clique-split";
    case AdversaryStrategy::TargetedMinDegree: return "targeted";
  }
  return "unknown";
}

AdversaryStrategy parse_adversary_strategy(const std::string& name) {
  if (name == "random") return AdversaryStrategy::RandomDeletion;
  if (name == "bipartite-split") return AdversaryStrategy::BipartiteSplit;
  if (name == "clique-split") return AdversaryStrategy::CliqueSplit;
  if (name == "targeted") return AdversaryStrategy::TargetedMinDegree;
  throw Error(ErrorCode::Schema, "unknown adversary strategy: " + name);
}

std::vector<int> deletion_caps(const Graph& g, double r) {
  std::vector<int> caps(static_cast<std::size_t>(g.n()), 0);
  for (int v = 0; v < g.n(); ++v) {
    double x = r * g.degree(v);
    double nearest = std::round(x);
    int cap = std::abs(x - nearest) < 1e-9 ? static_cast<int>(nearest) - 1 : static_cast<int>(std::floor(x));
    caps[static_cast<std::size_t>(v)] = std::max(0, cap);
  }
  return caps;
}

Graph apply_adversary(const Graph& g, const Adversary& adv, std::uint64_t seed) {
  if (!(adv.r >= 0.0 && adv.r < 1.0)) throw Error(ErrorCode::Argument, "apply_adversary: r must lie in [0, 1)");
  if (adv.parts < 1) throw Error(ErrorCode::Argument, "apply_adversary: parts must be positive");
  const int n = g.n();
  Rng rng(seed);
  auto caps = deletion_caps(g, adv.r);
  std::vector<Edge> candidates;
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  if (adv.strategy == AdversaryStrategy::CliqueSplit || adv.strategy == AdversaryStrategy::BipartiteSplit) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    if (adv.strategy == AdversaryStrategy::CliqueSplit) {
      for (int i = 0; i < n; ++i) label[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = static_cast<int>(static_cast<std::int64_t>(i) * adv.parts / std::max(n, 1));
    } else {
      // Small side of size n / parts; deleting inside both sides leaves an unbalanced bipartite core.
      int small = n / std::max(adv.parts, 2);
      for (int i = 0; i < n; ++i) label[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i < small ? 0 : 1;
    }
  }
  switch (adv.strategy) {
    case AdversaryStrategy::RandomDeletion:
      candidates = g.edges();
      rng.shuffle(candidates);
      break;
    case AdversaryStrategy::CliqueSplit:
      for (auto [u, v] : g.edges()) {
        if (label[static_cast<std::size_t>(u)] != label[static_cast<std::size_t>(v)]) candidates.emplace_back(u, v);
      }
      rng.shuffle(candidates);
      break;
    case AdversaryStrategy::BipartiteSplit:
      for (auto [u, v] : g.edges()) {
        if (label[static_cast<std::size_t>(u)] == label[static_cast<std::size_t>(v)]) candidates.emplace_back(u, v);
      }
      rng.shuffle(candidates);
      break;
    case AdversaryStrategy::TargetedMinDegree: {
      std::vector<int> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 0);
      auto by_degree = [&](int a, int b) { return g.degree(a) != g.degree(b) ? g.degree(a) < g.degree(b) : a < b; };
      std::sort(order.begin(), order.end(), by_degree);
      for (int v : order) {
        std::vector<int> nb = g.neighbors(v);
        std::sort(nb.begin(), nb.end(), by_degree);
        for (int w : nb) candidates.emplace_back(std::min(v, w), std::max(v, w));
      }
      break;
    }
  }
  std::set<Edge> removed;
  for (auto [u, v] : candidates) {
    auto& cu = caps[static_cast<std::size_t>(u)];
    auto& cv = caps[static_cast<std::size_t>(v)];
    if (cu > 0 && cv > 0 && !removed.count({u, v})) {
      removed.insert({u, v});
      --cu;
      --cv;
    }
  }
  std::vector<Edge> kept;
  for (const auto& e : g.edges()) {
    if (!removed.count(e)) kept.push_back(e);
  }
  return Graph::from_edges(n, kept);
}

bool audit_adversary(const Graph& g, const Graph& h, double r) {
  if (g.n() != h.n()) return false;
  for (int v = 0; v < g.n(); ++v) {
    for (Vertex w : h.neighbors(v)) {
      if (!g.has_edge(v, w)) return false;
    }
    double lost = g.degree(v) - h.degree(v);
    if (g.degree(v) > 0 && !(lost < r * g.degree(v) - 1e-9)) {
      if (lost != 0) return false;
    }
  }
  return true;
}

}  // namespace cyclecover
