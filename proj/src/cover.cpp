#include "cyclecover/cover.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "cyclecover/absorber.hpp"
#include "cyclecover/connect.hpp"
#include "cyclecover/errors.hpp"
#include "cyclecover/expander.hpp"
#include "cyclecover/rng.hpp"

namespace cyclecover {

namespace {

/// Largest connected component of G[mask], as a vertex list.
std::vector<Vertex> largest_component(const Graph& g, const std::vector<std::uint8_t>& mask) {
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(g.n()), 0);
  std::vector<Vertex> best, comp;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (!mask[static_cast<std::size_t>(s)] || seen[static_cast<std::size_t>(s)]) continue;
    comp.assign(1, s);
    seen[static_cast<std::size_t>(s)] = 1;
    for (std::size_t h = 0; h < comp.size(); ++h)
      for (Vertex x : g.neighbors(comp[h]))
        if (mask[static_cast<std::size_t>(x)] && !seen[static_cast<std::size_t>(x)]) {
          seen[static_cast<std::size_t>(x)] = 1;
          comp.push_back(x);
        }
    if (comp.size() > best.size()) best = comp;
  }
  return best;
}

double density(const Graph& g) {
  const double n = g.n();
  return n < 2 ? 0.0 : 2.0 * static_cast<double>(g.m()) / (n * (n - 1.0));
}

std::vector<Vertex> map_back(const std::vector<Vertex>& local, const VertexSet& ids) {
  std::vector<Vertex> out;
  out.reserve(local.size());
  for (Vertex v : local) out.push_back(ids[static_cast<std::size_t>(v)]);
  return out;
}

void validate_or_throw(const Graph& g, const CycleCover& cover, const char* stage) {
  CoverReport rep = validate_cycle_cover(g, cover);
  if (!rep.pass) throw Error(ErrorCode::InternalValidation, std::string("cover validation failed: ") + rep.violation, stage);
}

bool retryable(ErrorCode c) {
  switch (c) {
    case ErrorCode::ConnectivityExhausted:
    case ErrorCode::BalanceInfeasible:
    case ErrorCode::CoverageShortfall:
    case ErrorCode::InfeasibleDegree:
    case ErrorCode::TemplateResampleExceeded:
    case ErrorCode::NoMatching:
      return true;
    default:
      return false;
  }
}

template <class F>
auto staged(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (Error& e) {
    if (e.stage().empty()) e.set_stage(stage);
    throw;
  }
}

}  // namespace

ApproxCover approx_cycle_cover_detailed(const Graph& g, int k, double mu, long long budget, std::uint64_t seed, ExtensionRule rule, int attempts) {
  if (k < 2) throw Error(ErrorCode::Argument, "approx_cycle_cover: k >= 2 required");
  if (!(mu >= 0.0 && mu <= 1.0)) throw Error(ErrorCode::Argument, "approx_cycle_cover: mu must lie in [0, 1]");
  const int n = g.n();
  RotationOptions ropt;
  ropt.rotation_budget = budget;
  ropt.rule = rule;
  ApproxCover best;
  bool have = false;
  for (int attempt = 0; attempt < std::max(1, attempts); ++attempt) {
    Rng rng = Rng(seed).derive(static_cast<std::uint64_t>(attempt));
    std::vector<std::uint8_t> residue(static_cast<std::size_t>(n), 1);
    ApproxCover cur;
    for (int c = 0; c < k - 1; ++c) {
      std::vector<Vertex> comp = largest_component(g, residue);
      if (comp.size() < 3) break;
      Vertex start = comp[static_cast<std::size_t>(rng.below(comp.size()))];
      auto cyc = grow_cycle(g, residue, start, rng, ropt);
      if (!cyc) break;
      for (Vertex v : *cyc) residue[static_cast<std::size_t>(v)] = 0;
      cur.cycles.push_back(std::move(*cyc));
    }
    cur.leftover = from_mask(residue);
    if (!have || cur.leftover.size() < best.leftover.size()) {
      best = std::move(cur);
      have = true;
    }
    if (static_cast<double>(best.leftover.size()) <= mu * n + 1e-9) return best;
  }
  throw Error(ErrorCode::CoverageShortfall, "approx_cycle_cover: " + std::to_string(best.leftover.size()) + " vertices left uncovered, allowed " +
                                                std::to_string(static_cast<long long>(std::floor(mu * n + 1e-9))));
}

std::vector<Cycle> approx_cycle_cover(const Graph& g, int k, double mu, long long budget, std::uint64_t seed) {
  return approx_cycle_cover_detailed(g, k, mu, budget, seed).cycles;
}

std::vector<PathForest> path_forest_cover(const Graph& g, int k, int max_paths, const PathForestParams& params) {
  if (k < 2) throw Error(ErrorCode::Argument, "path_forest_cover: k >= 2 required");
  if (max_paths < 1) throw Error(ErrorCode::Argument, "path_forest_cover: max_paths must be positive");
  const int n = g.n();
  Rng rng(params.seed);
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  rng.derive(0).shuffle(order);
  std::vector<int> sizes{n};
  while (sizes.back() / 2 >= std::max(1, params.level_floor)) sizes.push_back(sizes.back() / 2);
  const int m = static_cast<int>(sizes.size()) - 1;

  std::vector<PathForest> forests(static_cast<std::size_t>(k - 1));
  VertexSet carry;
  for (int i = 0; i <= m; ++i) {
    const int hi = sizes[static_cast<std::size_t>(i)];
    const int lo = i < m ? sizes[static_cast<std::size_t>(i + 1)] : 0;
    VertexSet ring(order.begin() + lo, order.begin() + hi);
    ring.insert(ring.end(), carry.begin(), carry.end());
    ring = make_set(ring);
    if (ring.empty()) continue;
    Graph sub = g.induced(ring);
    ApproxCover ac = approx_cycle_cover_detailed(sub, k, 1.0, params.budget, derive_seed(params.seed, static_cast<std::uint64_t>(i + 1)));
    for (std::size_t j = 0; j < ac.cycles.size(); ++j) forests[j].paths.push_back(map_back(ac.cycles[j], ring));
    carry = make_set(map_back(ac.leftover, ring));
    if (i == m && static_cast<double>(carry.size()) > params.mu * static_cast<double>(ring.size()) + 1e-9)
      throw Error(ErrorCode::CoverageShortfall, "path_forest_cover: last level leaves " + std::to_string(carry.size()) + " vertices uncovered");
  }
  for (Vertex v : carry) forests[0].paths.push_back({v});

  std::vector<std::uint8_t> covered(static_cast<std::size_t>(n), 0);
  for (const auto& f : forests) {
    if (static_cast<int>(f.paths.size()) > max_paths)
      throw Error(ErrorCode::CoverageShortfall, "path_forest_cover: a forest needs " + std::to_string(f.paths.size()) + " paths, limit " + std::to_string(max_paths));
    for (const auto& p : f.paths) {
      if (!is_path(g, p)) throw Error(ErrorCode::InternalValidation, "path_forest_cover: invalid path");
      for (Vertex v : p) {
        if (covered[static_cast<std::size_t>(v)]) throw Error(ErrorCode::InternalValidation, "path_forest_cover: vertex covered twice");
        covered[static_cast<std::size_t>(v)] = 1;
      }
    }
  }
  if (std::count(covered.begin(), covered.end(), 1) != n) throw Error(ErrorCode::InternalValidation, "path_forest_cover: forests miss a vertex");
  return forests;
}

PairLedger balance_pairs(const PairLedger& ledger, const VertexSet& q_a, const VertexSet& q_b, std::uint64_t seed) {
  Rng rng(seed);
  PairLedger out;
  out.pairs = ledger.pairs;
  out.side.assign(ledger.pairs.size(), -1);
  for (std::size_t i = 0; i < out.pairs.size(); ++i) {
    if (out.pairs[i] == PairClass::AExpanding) {
      out.side[i] = 0;
      ++out.n_a;
    } else if (out.pairs[i] == PairClass::BExpanding) {
      out.side[i] = 1;
      ++out.n_b;
    }
  }
  for (std::size_t i = 0; i < out.pairs.size(); ++i) {
    if (out.pairs[i] != PairClass::Both) continue;
    int s = out.n_a < out.n_b ? 0 : out.n_b < out.n_a ? 1 : static_cast<int>(rng.below(2));
    out.side[i] = s;
    ++(s == 0 ? out.n_a : out.n_b);
  }
  std::size_t ia = 0, ib = 0;
  while (out.n_a < out.n_b) {
    if (ia >= q_a.size()) throw Error(ErrorCode::BalanceInfeasible, "balance_pairs: Q_A exhausted", "balance");
    out.insertions.push_back(q_a[ia++]);
    ++out.n_a;
  }
  while (out.n_b < out.n_a) {
    if (ib >= q_b.size()) throw Error(ErrorCode::BalanceInfeasible, "balance_pairs: Q_B exhausted", "balance");
    out.insertions.push_back(q_b[ib++]);
    ++out.n_b;
  }
  int ca = static_cast<int>(ia), cb = static_cast<int>(ib);
  for (int s : out.side) ++(s == 0 ? ca : cb);
  if (ca != out.n_a || cb != out.n_b || ca != cb) throw Error(ErrorCode::InternalValidation, "balance_pairs: recount mismatch", "balance");
  return out;
}

namespace {

struct AttemptResult {
  CycleCover cover;
  CoverStats stats;
};

/// One pass of the absorber pipeline. `side` is the bipartition used for U and W and
/// `host` the matching bipartite subgraph of g.
AttemptResult absorber_attempt(const Graph& g, int k, const PipelineConfig& cfg, std::uint64_t seed, const std::vector<std::uint8_t>& side,
                               const Graph& host) {
  const int n = g.n();
  Rng rng(seed);
  AttemptResult out;
  CoverStats& st = out.stats;
  st.route = "absorber";

  // U balanced across the sides, W a random share of the rest.
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  rng.derive(1).shuffle(perm);
  const int want_a = (cfg.u_size + 1) / 2, want_b = cfg.u_size / 2;
  int got_a = 0, got_b = 0;
  VertexSet u, rest;
  for (Vertex v : perm) {
    int& got = side[static_cast<std::size_t>(v)] == 0 ? got_a : got_b;
    int want = side[static_cast<std::size_t>(v)] == 0 ? want_a : want_b;
    if (got < want) {
      u.push_back(v);
      ++got;
    } else {
      rest.push_back(v);
    }
  }
  const std::size_t w_count = std::min(rest.size(), static_cast<std::size_t>(cfg.w_fraction * n));
  VertexSet w = make_set(VertexSet(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(w_count)));
  u = make_set(u);

  AbsorberParams ap;
  ap.r = cfg.template_r;
  ap.max_len = cfg.connect_max_len;
  ap.connect_budget = cfg.connect_budget;
  ap.seed = rng.derive(2).key();
  ap.adjacent_endpoints = true;
  ap.split = cfg.w_split;
  ap.tpl.exec = cfg.exec;
  AbsorberStructure abs = staged("absorber", [&] { return build_absorber(host, u, w, side, ap); });
  st.absorber_vertices = static_cast<int>(abs.vertices.size());
  st.absorber_gadgets = static_cast<int>(abs.gadgets.size());

  // Unused W flows back into the residue, which is covered by at most k-1 cycles.
  VertexSet residue = complement(n, abs.vertices);
  if (residue.size() < 3) throw Error(ErrorCode::CoverageShortfall, "residue has fewer than 3 vertices", "residue-cover");
  Graph rg = g.induced(residue);
  ApproxCover ac = staged("residue-cover", [&] {
    return approx_cycle_cover_detailed(rg, k, 0.0, cfg.rotation_budget, rng.derive(3).key(), cfg.rule, 2);
  });
  std::vector<Cycle> cycles;
  for (const auto& c : ac.cycles) cycles.push_back(map_back(c, residue));

  if (k >= 3 && cfg.inheritance_checks) {
    const double p = cfg.p > 0.0 ? cfg.p : density(g);
    CutSearchOptions co = cfg.cut;
    co.restarts = 1;
    for (const VertexSet* s : {&residue, &w}) {
      if (s->size() < 20) continue;
      co.seed = rng.derive(10 + static_cast<std::uint64_t>(st.inheritance_checked)).key();
      ExpansionVerdict v = certify_expander(g.induced(*s), cfg.gamma1 * p, co);
      ++st.inheritance_checked;
      if (v.kind != ExpansionVerdict::Kind::CutFound) ++st.inheritance_passed;
    }
  }

  // Open the largest residue cycle so that its ends join b and a, directly when possible.
  std::size_t ci = 0;
  for (std::size_t i = 1; i < cycles.size(); ++i)
    if (cycles[i].size() > cycles[ci].size()) ci = i;
  std::vector<std::uint8_t> head_direct(static_cast<std::size_t>(n), 0), tail_direct(static_cast<std::size_t>(n), 0);
  for (Vertex x : g.neighbors(abs.b)) head_direct[static_cast<std::size_t>(x)] = 1;
  for (Vertex x : g.neighbors(abs.a)) tail_direct[static_cast<std::size_t>(x)] = 1;
  Rng srng = rng.derive(4);
  auto opened = open_cycle_steered(g, cycles[ci], head_direct, tail_direct, cfg.steering_budget, srng);
  if (!opened) {
    // One U-vertex per junction: targets are neighbours of U-vertices adjacent to b (resp. a).
    std::vector<std::uint8_t> head_via(head_direct), tail_via(tail_direct);
    for (Vertex x : u) {
      if (g.has_edge(x, abs.b))
        for (Vertex y : g.neighbors(x)) head_via[static_cast<std::size_t>(y)] = 1;
      if (g.has_edge(x, abs.a))
        for (Vertex y : g.neighbors(x)) tail_via[static_cast<std::size_t>(y)] = 1;
    }
    opened = open_cycle_steered(g, cycles[ci], head_via, tail_via, cfg.steering_budget, srng);
  }
  if (!opened) throw Error(ErrorCode::ConnectivityExhausted, "could not steer residue path ends towards the absorber", "steering");
  const Path& sp = *opened;

  ConnectionDemand junction;
  junction.add(abs.b, sp.front());
  junction.add(sp.back(), abs.a);
  ConnectOptions co;
  co.max_len = 3;
  co.budget = 2;
  co.seed = rng.derive(5).key();
  PathSystem ps = staged("junction", [&] { return connect_all(g, junction, u, co); });

  PairLedger ledger;
  VertexSet used_a, used_b;
  for (const Path& r : ps.routes) {
    if (r.size() == 2) {
      ++st.direct_junctions;
      continue;
    }
    for (std::size_t i = 1; i + 1 < r.size(); ++i) {
      Vertex x = r[i];
      bool on_a = side[static_cast<std::size_t>(x)] == 0;
      (on_a ? used_a : used_b).push_back(x);
      ledger.pairs.push_back(on_a ? PairClass::AExpanding : PairClass::BExpanding);
    }
  }
  staged("balance", [&] { return balance_pairs(ledger, {}, {}, rng.derive(6).key()); });
  used_a = make_set(used_a);
  used_b = make_set(used_b);
  st.absorbed_u = static_cast<int>(u.size() - used_a.size() - used_b.size());

  Path ab = staged("absorb", [&] { return absorb(host, abs, used_a, used_b); });
  Cycle big = ab;
  const Path& r1 = ps.routes[0];
  big.insert(big.end(), r1.begin() + 1, r1.end() - 1);
  big.insert(big.end(), sp.begin(), sp.end());
  const Path& r2 = ps.routes[1];
  big.insert(big.end(), r2.begin() + 1, r2.end() - 1);
  cycles[ci] = std::move(big);

  out.cover.k = k;
  out.cover.cycles = std::move(cycles);
  return out;
}

}  // namespace

CycleCover cover_expander(const Graph& g, int k, const PipelineConfig& cfg, CoverStats* stats) {
  if (k < 2) throw Error(ErrorCode::Argument, "cover_expander: k >= 2 required");
  const int n = g.n();
  CoverStats st;
  if (n < cfg.small_n) {
    st.route = "direct";
    st.attempts = 1;
    ApproxCover ac = staged("approx-cover", [&] {
      return approx_cycle_cover_detailed(g, k, 0.0, cfg.rotation_budget, cfg.seed, cfg.rule, std::max(3, cfg.retries));
    });
    CycleCover cover{ac.cycles, k};
    validate_or_throw(g, cover, "validate");
    if (stats) *stats = st;
    return cover;
  }
  if (!is_connected(g)) throw Error(ErrorCode::Precondition, "cover_expander: input is disconnected; partition it first", "expander-check");

  std::vector<std::uint8_t> side(static_cast<std::size_t>(n), 0);
  Graph host;
  if (k == 2) {
    Rng rs = Rng(cfg.seed).derive(0xB1);
    for (auto& s : side) s = static_cast<std::uint8_t>(rs.below(2));
    host = g.crossing_subgraph(side);
  } else {
    const double p = cfg.p > 0.0 ? cfg.p : density(g);
    BipartiteSubgraph f = staged("bipartite-subgraph", [&] {
      return bipartite_expander_subgraph(g, 4, derive_seed(cfg.seed, 0xB2), cfg.gamma_target * p, cfg.exec);
    });
    side = f.side;
    host = std::move(f.subgraph);
  }

  std::optional<Error> last;
  for (int attempt = 0; attempt < std::max(1, cfg.retries); ++attempt) {
    try {
      AttemptResult r = absorber_attempt(g, k, cfg, derive_seed(cfg.seed, static_cast<std::uint64_t>(attempt) + 1), side, host);
      validate_or_throw(g, r.cover, "validate");
      r.stats.attempts = attempt + 1;
      r.stats.retry_reasons = st.retry_reasons;
      if (stats) *stats = r.stats;
      return r.cover;
    } catch (const Error& e) {
      if (!retryable(e.code())) throw;
      st.retry_reasons.push_back(std::string(to_string(e.code())) + "@" + e.stage());
      last = e;
    }
  }
  if (stats) {
    st.attempts = std::max(1, cfg.retries);
    *stats = st;
  }
  throw *last;
}

CycleCover cover_graph(const Graph& g, int k, const PipelineConfig& cfg, CoverStats* stats) {
  if (k < 2) throw Error(ErrorCode::Argument, "cover_graph: k >= 2 required");
  const int n = g.n();
  if (n < cfg.small_n || !cfg.use_partition) return cover_expander(g, k, cfg, stats);

  PartitionParams pp;
  pp.c = cfg.c;
  pp.alpha = cfg.alpha;
  pp.xi = cfg.xi;
  pp.p = cfg.p > 0.0 ? cfg.p : density(g);
  pp.gamma_target = cfg.gamma_target;
  pp.cut = cfg.cut;
  pp.cut.seed = derive_seed(cfg.seed, 0xFA);
  pp.cut.exec = cfg.exec;
  PartitionResult pr = staged("partition", [&] { return partition_into_expanders(g, pp); });

  const std::size_t np = pr.parts.size();
  std::vector<int> ks(np);
  int budget = 0;
  for (std::size_t i = 0; i < np; ++i) {
    const double share = static_cast<double>(k) * static_cast<double>(pr.parts[i].size()) / n;
    ks[i] = std::max(2, static_cast<int>(std::ceil(share - 1e-9)));
    budget += ks[i] - 1;
  }
  if (np == 1) ks[0] = k;
  if (np > 1 && budget > k - 1)
    throw Error(ErrorCode::PartitionBudgetError, "cover_graph: parts need " + std::to_string(budget) + " cycles, only " + std::to_string(k - 1) + " allowed",
                "partition");

  std::vector<CycleCover> covers(np);
  std::vector<CoverStats> part_stats(np);
  std::vector<std::exception_ptr> errors(np);
  PipelineConfig sub_cfg = cfg;
  sub_cfg.p = pp.p;
  const long long count = static_cast<long long>(np);
#pragma omp parallel for schedule(dynamic) if (cfg.exec == Exec::Parallel && count > 1)
  for (long long i = 0; i < count; ++i) {
    const std::size_t idx = static_cast<std::size_t>(i);
    try {
      PipelineConfig c = sub_cfg;
      c.seed = derive_seed(cfg.seed, 0x1000 + static_cast<std::uint64_t>(i));
      Graph sub = g.induced(pr.parts[idx]);
      covers[idx] = cover_expander(sub, ks[idx], c, &part_stats[idx]);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  CycleCover cover;
  cover.k = k;
  CoverStats st;
  st.parts = static_cast<int>(np);
  st.part_k = ks;
  st.route = "absorber";
  for (std::size_t i = 0; i < np; ++i) {
    for (const auto& c : covers[i].cycles) cover.cycles.push_back(map_back(c, pr.parts[i]));
    const CoverStats& ps = part_stats[i];
    if (ps.route != "absorber") st.route = ps.route;
    st.attempts = std::max(st.attempts, ps.attempts);
    st.absorber_vertices += ps.absorber_vertices;
    st.absorber_gadgets += ps.absorber_gadgets;
    st.direct_junctions += ps.direct_junctions;
    st.absorbed_u += ps.absorbed_u;
    st.inheritance_checked += ps.inheritance_checked;
    st.inheritance_passed += ps.inheritance_passed;
    st.retry_reasons.insert(st.retry_reasons.end(), ps.retry_reasons.begin(), ps.retry_reasons.end());
  }
  validate_or_throw(g, cover, "validate");
  if (stats) *stats = st;
  return cover;
}

}  // namespace cyclecover
