#include "cyclecover/absorber.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "cyclecover/connect.hpp"
#include "cyclecover/errors.hpp"
#include "cyclecover/matching.hpp"
#include "cyclecover/rng.hpp"

namespace cyclecover {

int TemplateGraph::max_degree() const {
  int d = 0;
  for (const auto& a : adj_a) d = std::max(d, static_cast<int>(a.size()));
  for (const auto& b : adj_b) d = std::max(d, static_cast<int>(b.size()));
  return d;
}

namespace {

TemplateGraph make_template(int n, int r, Rng rng) {
  std::set<Edge> base;
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < r; ++i) {
    for (int a = 0; a < n; ++a) perm[static_cast<std::size_t>(a)] = a;
    rng.shuffle(perm);
    for (int a = 0; a < n; ++a) base.insert({a, perm[static_cast<std::size_t>(a)]});
  }
  TemplateGraph t;
  t.size_n = n;
  t.matchings_used = r;
  t.base_edges.assign(base.begin(), base.end());
  t.adj_a.assign(static_cast<std::size_t>(2 * n), {});
  t.adj_b.assign(static_cast<std::size_t>(2 * n), {});
  for (auto [a, b] : t.base_edges) {
    for (int ca = 0; ca < 2; ++ca)
      for (int cb = 0; cb < 2; ++cb) t.edges.push_back({a + ca * n, b + cb * n});
  }
  std::sort(t.edges.begin(), t.edges.end());
  for (auto [a, b] : t.edges) {
    t.adj_a[static_cast<std::size_t>(a)].push_back(b);
    t.adj_b[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& l : t.adj_b) std::sort(l.begin(), l.end());
  return t;
}

VertexSet mask_to_ids(std::uint32_t mask) {
  VertexSet s;
  for (int i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1U) s.push_back(i);
  return s;
}

bool is_flexible_subset(const VertexSet& z, int n) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] < 0 || z[i] >= n) return false;
    if (i > 0 && z[i] <= z[i - 1]) return false;
  }
  return true;
}

}  // namespace

std::optional<std::vector<Edge>> template_perfect_matching(const TemplateGraph& t, const VertexSet& z_a, const VertexSet& z_b) {
  const int n2 = 2 * t.size_n;
  std::vector<std::uint8_t> del_a(static_cast<std::size_t>(n2), 0), del_b(static_cast<std::size_t>(n2), 0);
  for (int z : z_a) del_a[static_cast<std::size_t>(z)] = 1;
  for (int z : z_b) del_b[static_cast<std::size_t>(z)] = 1;
  std::vector<int> left, right_index(static_cast<std::size_t>(n2), -1), right;
  for (int a = 0; a < n2; ++a)
    if (!del_a[static_cast<std::size_t>(a)]) left.push_back(a);
  for (int b = 0; b < n2; ++b)
    if (!del_b[static_cast<std::size_t>(b)]) {
      right_index[static_cast<std::size_t>(b)] = static_cast<int>(right.size());
      right.push_back(b);
    }
  if (left.size() != right.size()) return std::nullopt;
  std::vector<std::vector<int>> adj(left.size());
  for (std::size_t i = 0; i < left.size(); ++i)
    for (int b : t.adj_a[static_cast<std::size_t>(left[i])]) {
      int j = right_index[static_cast<std::size_t>(b)];
      if (j >= 0) adj[i].push_back(j);
    }
  std::vector<int> match = max_bipartite_matching(static_cast<int>(left.size()), static_cast<int>(right.size()), adj);
  if (matching_size(match) != static_cast<int>(left.size())) return std::nullopt;
  std::vector<Edge> out;
  out.reserve(left.size());
  for (std::size_t i = 0; i < left.size(); ++i) out.push_back({left[i], right[static_cast<std::size_t>(match[i])]});
  return out;
}

std::vector<Edge> template_matching(const TemplateGraph& t, const VertexSet& z_a, const VertexSet& z_b) {
  if (z_a.size() != z_b.size() || !is_flexible_subset(z_a, t.size_n) || !is_flexible_subset(z_b, t.size_n))
    throw Error(ErrorCode::UnbalancedAbsorptionRequest, "template_matching: Z must be balanced and inside A' u B'");
  auto m = template_perfect_matching(t, z_a, z_b);
  if (!m) throw Error(ErrorCode::NoMatching, "template_matching: no perfect matching of G_T - Z");
  return *m;
}

TemplateVerification verify_template(const TemplateGraph& t, VerifyMode mode, long long samples, std::uint64_t seed, Exec exec) {
  const int n = t.size_n;
  TemplateVerification rep;
  rep.exhaustive = mode == VerifyMode::Exhaustive || (mode == VerifyMode::Auto && n <= 6);
  if (rep.exhaustive && n > 12) throw Error(ErrorCode::SizeLimit, "verify_template: exhaustive mode needs n <= 12");

  std::vector<std::pair<std::uint32_t, std::uint32_t>> cases;
  long long count = samples;
  if (rep.exhaustive) {
    const std::uint32_t full = 1U << n;
    for (std::uint32_t ma = 0; ma < full; ++ma)
      for (std::uint32_t mb = 0; mb < full; ++mb)
        if (__builtin_popcount(ma) == __builtin_popcount(mb)) cases.push_back({ma, mb});
    count = static_cast<long long>(cases.size());
  }
  auto make_case = [&](long long i) -> std::pair<VertexSet, VertexSet> {
    if (rep.exhaustive) return {mask_to_ids(cases[static_cast<std::size_t>(i)].first), mask_to_ids(cases[static_cast<std::size_t>(i)].second)};
    Rng rng = Rng(seed).derive(static_cast<std::uint64_t>(i));
    int j = rng.range(0, n);
    std::vector<int> za = rng.sample(n, j), zb = rng.sample(n, j);
    std::sort(za.begin(), za.end());
    std::sort(zb.begin(), zb.end());
    return {za, zb};
  };

  std::vector<std::uint8_t> ok(static_cast<std::size_t>(std::max(0LL, count)), 0);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < count; ++i) {
      auto [za, zb] = make_case(i);
      ok[static_cast<std::size_t>(i)] = template_perfect_matching(t, za, zb).has_value();
    }
  } else {
    for (long long i = 0; i < count; ++i) {
      auto [za, zb] = make_case(i);
      ok[static_cast<std::size_t>(i)] = template_perfect_matching(t, za, zb).has_value();
    }
  }
  rep.checked = count;
  for (long long i = 0; i < count; ++i) {
    if (ok[static_cast<std::size_t>(i)]) {
      ++rep.passed;
    } else if (!rep.counterexample) {
      rep.counterexample = make_case(i);
    }
  }
  return rep;
}

TemplateGraph build_template(int n, int r, std::uint64_t seed, const TemplateOptions& opt, TemplateVerification* report) {
  if (n < 1 || r < 1) throw Error(ErrorCode::Argument, "build_template: need n >= 1 and r >= 1");
  Rng root(seed);
  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    TemplateGraph t = make_template(n, r, root.derive(static_cast<std::uint64_t>(2 * attempt)));
    TemplateVerification v = verify_template(t, opt.mode, opt.samples, root.derive(static_cast<std::uint64_t>(2 * attempt + 1)).key(), opt.exec);
    v.attempts = attempt + 1;
    if (v.passed == v.checked) {
      if (report) *report = v;
      return t;
    }
  }
  throw Error(ErrorCode::TemplateResampleExceeded,
              "build_template: no verified template after " + std::to_string(opt.max_attempts) + " attempts", "absorber");
}

namespace {

struct GadgetIndex {
  const Path& p;
  const Path& q;
  int lp() const { return static_cast<int>(p.size() - 2) / 2; }
  int lq() const { return static_cast<int>(q.size() - 2) / 2; }
  Vertex ap(int i) const { return p[static_cast<std::size_t>(2 * i - 1)]; }
  Vertex bp(int i) const { return p[static_cast<std::size_t>(2 * i)]; }
  Vertex aq(int i) const { return q[static_cast<std::size_t>(2 * i - 1)]; }
  Vertex bq(int i) const { return q[static_cast<std::size_t>(2 * i)]; }
};

void check_gadget_paths(const Path& p, const Path& q) {
  auto bad = [](const Path& x) { return x.size() < 4 || x.size() % 2 != 0; };
  if (bad(p) || bad(q) || p.size() > q.size() || p.front() != q.front() || p.back() != q.back())
    throw Error(ErrorCode::InternalValidation, "gadget: P and Q must be odd-length x-y paths with |P| <= |Q|");
}

}  // namespace

std::vector<Edge> gadget_rung_pairs(const Path& p, const Path& q) {
  check_gadget_paths(p, q);
  GadgetIndex ix{p, q};
  const int lp = ix.lp(), lq = ix.lq();
  std::vector<Edge> out;
  for (int i = 1; i <= lp; ++i) out.push_back({ix.bp(i), ix.aq(i)});
  for (int i = 1; i <= lp - 1; ++i) out.push_back({ix.ap(i + 1), ix.bq(i)});
  const int h = (lq - lp + 1) / 2;
  for (int i = 1; i <= h; ++i) {
    Vertex b1 = ix.bq(lp + i - 1), b2 = ix.bq(lq - i + 1);
    if (b1 != b2) out.push_back({b1, b2});
    Vertex a1 = ix.aq(lp + i), a2 = ix.aq(lq - i + 1);
    if (a1 != a2) out.push_back({a1, a2});
  }
  return out;
}

std::pair<Vertex, Vertex> gadget_endpoints(const Path& p, const Path& q) {
  check_gadget_paths(p, q);
  GadgetIndex ix{p, q};
  const int s = ix.lp() + ix.lq();
  Vertex v = s % 2 == 0 ? ix.bq(s / 2) : ix.aq((s + 1) / 2);
  return {ix.ap(1), v};
}

Path gadget_walk(const TwoVertexGadget& gd, bool absorbing) {
  const Path& p = gd.path_p;
  const Path& q = gd.path_q;
  check_gadget_paths(p, q);
  if (gd.rungs.size() != gd.rung_pairs.size()) throw Error(ErrorCode::InternalValidation, "gadget: rung count mismatch");
  GadgetIndex ix{p, q};
  const int lp = ix.lp(), lq = ix.lq();
  const Vertex x = p.front(), y = p.back();

  std::vector<std::tuple<Vertex, Vertex, int>> edges;  // (s, t, rung index or -1)
  if (absorbing) {
    edges.push_back({x, ix.ap(1), -1});
    edges.push_back({x, ix.aq(1), -1});
    for (int i = 1; i < lp; ++i) edges.push_back({ix.bp(i), ix.ap(i + 1), -1});
    edges.push_back({ix.bp(lp), y, -1});
    edges.push_back({y, ix.bq(lq), -1});
    for (int j = 1; j < lq; ++j) edges.push_back({ix.bq(j), ix.aq(j + 1), -1});
  } else {
    for (int i = 1; i <= lp; ++i) edges.push_back({ix.ap(i), ix.bp(i), -1});
    for (int j = 1; j <= lq; ++j) edges.push_back({ix.aq(j), ix.bq(j), -1});
  }
  for (std::size_t r = 0; r < gd.rung_pairs.size(); ++r) {
    const Path& rp = gd.rungs[r];
    auto [s, t] = gd.rung_pairs[r];
    if (rp.size() < 2 || rp.front() != s || rp.back() != t) throw Error(ErrorCode::InternalValidation, "gadget: rung path does not match its pair");
    edges.push_back({s, t, static_cast<int>(r)});
  }

  VertexSet expected;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) expected.push_back(p[i]);
  for (std::size_t i = 1; i + 1 < q.size(); ++i) expected.push_back(q[i]);
  if (absorbing) {
    expected.push_back(x);
    expected.push_back(y);
  }
  expected = make_set(expected);

  // Incidence lists over the abstract vertex set.
  std::vector<std::pair<Vertex, int>> inc;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    inc.push_back({std::get<0>(edges[e]), static_cast<int>(e)});
    inc.push_back({std::get<1>(edges[e]), static_cast<int>(e)});
  }
  std::sort(inc.begin(), inc.end());
  VertexSet present;
  for (auto& [v, e] : inc) present.push_back(v);
  present = make_set(present);
  if (present != expected) throw Error(ErrorCode::InternalValidation, "gadget: traversal vertex set mismatch");
  if (edges.size() + 1 != expected.size()) throw Error(ErrorCode::InternalValidation, "gadget: traversal is not a path");
  auto incident = [&](Vertex v) {
    auto lo = std::lower_bound(inc.begin(), inc.end(), std::make_pair(v, -1));
    std::vector<int> es;
    for (auto it = lo; it != inc.end() && it->first == v; ++it) es.push_back(it->second);
    return es;
  };

  Path walk{gd.u};
  std::vector<std::uint8_t> used(edges.size(), 0);
  if (incident(gd.u).size() != 1) throw Error(ErrorCode::InternalValidation, "gadget: u is not a traversal end");
  Vertex cur = gd.u;
  std::size_t steps = 0;
  while (true) {
    std::vector<int> es = incident(cur);
    if (es.size() > 2) throw Error(ErrorCode::InternalValidation, "gadget: traversal vertex of degree > 2");
    int next_e = -1;
    for (int e : es)
      if (!used[static_cast<std::size_t>(e)]) next_e = e;
    if (next_e < 0) break;
    used[static_cast<std::size_t>(next_e)] = 1;
    ++steps;
    auto [s, t, r] = edges[static_cast<std::size_t>(next_e)];
    Vertex nxt = s == cur ? t : s;
    if (r >= 0) {
      const Path& rp = gd.rungs[static_cast<std::size_t>(r)];
      if (rp.front() == cur) {
        walk.insert(walk.end(), rp.begin() + 1, rp.end());
      } else {
        walk.insert(walk.end(), rp.rbegin() + 1, rp.rend());
      }
    } else {
      walk.push_back(nxt);
    }
    cur = nxt;
  }
  if (steps != edges.size() || cur != gd.v) throw Error(ErrorCode::InternalValidation, "gadget: traversal does not end at v");
  return walk;
}

AbsorberStructure build_absorber(const Graph& g, const VertexSet& u, const VertexSet& w, const std::vector<std::uint8_t>& side,
                                 const AbsorberParams& params) {
  const int n = g.n();
  const std::string stage = "absorber";
  check_set(n, u, "build_absorber U");
  check_set(n, w, "build_absorber W");
  if (static_cast<int>(side.size()) != n) throw Error(ErrorCode::Argument, "build_absorber: side vector size mismatch", stage);
  if (u.size() < 2) throw Error(ErrorCode::Precondition, "build_absorber: |U| >= 2 required", stage);
  std::vector<std::uint8_t> in_u = to_mask(n, u), in_w = to_mask(n, w);
  for (Vertex v : u)
    if (in_w[static_cast<std::size_t>(v)]) throw Error(ErrorCode::Argument, "build_absorber: U and W intersect", stage);
  for (const VertexSet* s : {&u, &w})
    for (Vertex v : *s)
      for (Vertex x : g.neighbors(v))
        if ((in_u[static_cast<std::size_t>(x)] || in_w[static_cast<std::size_t>(x)]) && side[static_cast<std::size_t>(x)] == side[static_cast<std::size_t>(v)])
          throw Error(ErrorCode::Precondition, "build_absorber: host is not bipartite on U u W", stage);

  AbsorberStructure abs;
  VertexSet wa, wb;
  for (Vertex v : u) (side[static_cast<std::size_t>(v)] == 0 ? abs.u_in_a : abs.u_in_b).push_back(v);
  for (Vertex v : w) (side[static_cast<std::size_t>(v)] == 0 ? wa : wb).push_back(v);
  const int tn = static_cast<int>(std::max(abs.u_in_a.size(), abs.u_in_b.size()));
  const int pad_a = 2 * tn - static_cast<int>(abs.u_in_a.size());
  const int pad_b = 2 * tn - static_cast<int>(abs.u_in_b.size());
  if (params.gamma > 0.0) {
    double need = params.gamma * static_cast<double>(w.size()) / 4.0;
    if (static_cast<double>(wa.size()) < need || static_cast<double>(wb.size()) < need)
      throw Error(ErrorCode::InfeasibleDegree, "build_absorber: one side of W is smaller than gamma |W| / 4", stage);
  }
  if (static_cast<int>(wa.size()) < pad_a + 1 || static_cast<int>(wb.size()) < pad_b + 1)
    throw Error(ErrorCode::InfeasibleDegree, "build_absorber: W too small for padding and endpoints", stage);

  // Rank W-vertices by degree into W, random tie-break.
  Rng rng(params.seed);
  auto rank = [&](VertexSet vs, Rng r) {
    std::vector<std::tuple<int, std::uint64_t, Vertex>> key;
    for (Vertex v : vs) key.push_back({-degree_into(g, v, in_w), r(), v});
    std::sort(key.begin(), key.end());
    VertexSet out;
    for (auto& k : key) out.push_back(std::get<2>(k));
    return out;
  };
  VertexSet ra = rank(wa, rng.derive(1)), rb = rank(wb, rng.derive(2));
  abs.a = ra.front();
  abs.b = rb.front();
  if (params.adjacent_endpoints) {
    for (Vertex v : rb)
      if (g.has_edge(abs.a, v)) {
        abs.b = v;
        break;
      }
  }
  std::vector<std::uint8_t> taken(static_cast<std::size_t>(n), 0);
  taken[static_cast<std::size_t>(abs.a)] = taken[static_cast<std::size_t>(abs.b)] = 1;
  auto pick = [&](const VertexSet& ranked, int count) {
    VertexSet out;
    for (Vertex v : ranked) {
      if (static_cast<int>(out.size()) == count) break;
      if (!taken[static_cast<std::size_t>(v)]) {
        out.push_back(v);
        taken[static_cast<std::size_t>(v)] = 1;
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  VertexSet padding_a = pick(ra, pad_a), padding_b = pick(rb, pad_b);
  abs.f_a = abs.u_in_a;
  abs.f_a.insert(abs.f_a.end(), padding_a.begin(), padding_a.end());
  abs.f_b = abs.u_in_b;
  abs.f_b.insert(abs.f_b.end(), padding_b.begin(), padding_b.end());

  VertexSet rest;
  for (Vertex v : w)
    if (!taken[static_cast<std::size_t>(v)]) rest.push_back(v);
  rng.derive(3).shuffle(rest);
  double total = params.split[0] + params.split[1] + params.split[2];
  std::size_t n1 = static_cast<std::size_t>(static_cast<double>(rest.size()) * params.split[0] / total);
  std::size_t n2 = static_cast<std::size_t>(static_cast<double>(rest.size()) * params.split[1] / total);
  abs.w1 = make_set(VertexSet(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(n1)));
  abs.w2 = make_set(VertexSet(rest.begin() + static_cast<std::ptrdiff_t>(n1), rest.begin() + static_cast<std::ptrdiff_t>(n1 + n2)));
  abs.w3 = make_set(VertexSet(rest.begin() + static_cast<std::ptrdiff_t>(n1 + n2), rest.end()));

  TemplateOptions topt = params.tpl;
  abs.tpl = build_template(tn, params.r, rng.derive(4).key(), topt);

  auto route = [&](const ConnectionDemand& d, const VertexSet& pool, std::uint64_t tag, const char* phase) {
    ConnectOptions co;
    co.max_len = params.max_len;
    co.budget = params.connect_budget;
    co.seed = rng.derive(tag).key();
    try {
      return connect_all(g, d, pool, co);
    } catch (Error& e) {
      e.set_stage(std::string(stage) + "/" + phase);
      throw;
    }
  };

  // Phase 1: a double path per template edge through W1.
  std::vector<std::uint8_t> in_w1 = to_mask(n, abs.w1);
  for (std::size_t t = 0; t < abs.tpl.adj_a.size(); ++t) {
    const int need_a = 2 * static_cast<int>(abs.tpl.adj_a[t].size());
    const int need_b = 2 * static_cast<int>(abs.tpl.adj_b[t].size());
    if (degree_into(g, abs.f_a[t], in_w1) < need_a || degree_into(g, abs.f_b[t], in_w1) < need_b)
      throw Error(ErrorCode::ConnectivityExhausted, "build_absorber: a template terminal has fewer W1-neighbours than its routes", stage + "/phase1");
  }
  ConnectionDemand d1;
  for (auto [ta, tb] : abs.tpl.edges) d1.add(abs.f_b[static_cast<std::size_t>(tb)], abs.f_a[static_cast<std::size_t>(ta)], 2, false);
  PathSystem ps1 = route(d1, abs.w1, 5, "phase1");
  abs.gadgets.resize(abs.tpl.edges.size());
  for (std::size_t i = 0; i < abs.tpl.edges.size(); ++i) {
    TwoVertexGadget& gd = abs.gadgets[i];
    gd.ty = abs.tpl.edges[i].first;
    gd.tx = abs.tpl.edges[i].second;
    const Path& r0 = ps1.routes[2 * i];
    const Path& r1 = ps1.routes[2 * i + 1];
    gd.path_p = r0.size() <= r1.size() ? r0 : r1;
    gd.path_q = r0.size() <= r1.size() ? r1 : r0;
    gd.rung_pairs = gadget_rung_pairs(gd.path_p, gd.path_q);
    std::tie(gd.u, gd.v) = gadget_endpoints(gd.path_p, gd.path_q);
  }

  // Phase 2: rung connectors through W2.
  ConnectionDemand d2;
  for (const auto& gd : abs.gadgets)
    for (auto [s, t] : gd.rung_pairs) d2.add(s, t);
  PathSystem ps2 = route(d2, abs.w2, 6, "phase2");
  std::size_t k = 0;
  for (auto& gd : abs.gadgets)
    for (std::size_t r = 0; r < gd.rung_pairs.size(); ++r) gd.rungs.push_back(ps2.routes[k++]);

  // Phase 3: chain a -> gadget 1 -> ... -> gadget m -> b through W3.
  ConnectionDemand d3;
  Vertex prev = abs.a;
  for (const auto& gd : abs.gadgets) {
    d3.add(prev, gd.u);
    prev = gd.v;
  }
  d3.add(prev, abs.b);
  PathSystem ps3 = route(d3, abs.w3, 7, "phase3");
  abs.chain = ps3.routes;

  for (const auto& gd : abs.gadgets) {
    for (bool absorbing : {true, false}) {
      Path walk = gadget_walk(gd, absorbing);
      if (!is_path(g, walk)) throw Error(ErrorCode::InternalValidation, "build_absorber: gadget traversal is not a host path", stage);
    }
  }

  VertexSet all = abs.f_a;
  all.insert(all.end(), abs.f_b.begin(), abs.f_b.end());
  all.push_back(abs.a);
  all.push_back(abs.b);
  for (const PathSystem* ps : {&ps1, &ps2, &ps3}) all.insert(all.end(), ps->used_internal.begin(), ps->used_internal.end());
  std::size_t raw = all.size();
  abs.vertices = make_set(all);
  if (abs.vertices.size() != raw) throw Error(ErrorCode::InternalValidation, "build_absorber: phase vertex sets overlap", stage);
  return abs;
}

Path absorb(const Graph& g, const AbsorberStructure& abs, const VertexSet& x_prime, const VertexSet& y_prime) {
  auto inverse = [](const std::vector<Vertex>& f, const VertexSet& xs, const VertexSet& allowed) {
    VertexSet ids;
    for (Vertex x : xs) {
      if (!std::binary_search(allowed.begin(), allowed.end(), x))
        throw Error(ErrorCode::UnbalancedAbsorptionRequest, "absorb: vertex " + std::to_string(x) + " is not an absorbable U-vertex");
      ids.push_back(static_cast<int>(std::find(f.begin(), f.end(), x) - f.begin()));
    }
    std::size_t before = ids.size();
    ids = make_set(ids);
    if (ids.size() != before) throw Error(ErrorCode::UnbalancedAbsorptionRequest, "absorb: repeated vertex");
    return ids;
  };
  if (x_prime.size() != y_prime.size()) throw Error(ErrorCode::UnbalancedAbsorptionRequest, "absorb: |X'| != |Y'|");
  VertexSet za = inverse(abs.f_a, x_prime, abs.u_in_a);
  VertexSet zb = inverse(abs.f_b, y_prime, abs.u_in_b);
  std::vector<Edge> m = template_matching(abs.tpl, za, zb);
  std::sort(m.begin(), m.end());

  Path path = abs.chain.at(0);
  for (std::size_t i = 0; i < abs.gadgets.size(); ++i) {
    const TwoVertexGadget& gd = abs.gadgets[i];
    bool absorbing = std::binary_search(m.begin(), m.end(), Edge{gd.ty, gd.tx});
    Path walk = gadget_walk(gd, absorbing);
    const Path& link = abs.chain.at(i + 1);
    if (walk.front() != path.back() || link.front() != walk.back()) throw Error(ErrorCode::InternalValidation, "absorb: chain does not join gadgets");
    path.insert(path.end(), walk.begin() + 1, walk.end());
    path.insert(path.end(), link.begin() + 1, link.end());
  }

  VertexSet removed = x_prime;
  removed.insert(removed.end(), y_prime.begin(), y_prime.end());
  removed = make_set(removed);
  VertexSet expected;
  std::set_difference(abs.vertices.begin(), abs.vertices.end(), removed.begin(), removed.end(), std::back_inserter(expected));
  if (!is_path(g, path) || path.front() != abs.a || path.back() != abs.b || path.size() != expected.size() || make_set(path) != expected)
    throw Error(ErrorCode::InternalValidation, "absorb: recount of the absorbing path failed");
  return path;
}

AbsorberReport verify_absorber(const Graph& g, const AbsorberStructure& abs, int trials, std::uint64_t seed, Exec exec) {
  const int t = static_cast<int>(std::min(abs.u_in_a.size(), abs.u_in_b.size()));
  std::vector<std::pair<VertexSet, VertexSet>> cases;
  cases.push_back({});
  cases.push_back({VertexSet(abs.u_in_a.begin(), abs.u_in_a.begin() + t), VertexSet(abs.u_in_b.begin(), abs.u_in_b.begin() + t)});
  for (int i = 0; i < trials; ++i) {
    Rng rng = Rng(seed).derive(static_cast<std::uint64_t>(i));
    int j = rng.range(0, t);
    VertexSet xs, ys;
    for (int idx : rng.sample(static_cast<int>(abs.u_in_a.size()), j)) xs.push_back(abs.u_in_a[static_cast<std::size_t>(idx)]);
    for (int idx : rng.sample(static_cast<int>(abs.u_in_b.size()), j)) ys.push_back(abs.u_in_b[static_cast<std::size_t>(idx)]);
    cases.push_back({make_set(xs), make_set(ys)});
  }
  std::vector<std::string> fail(cases.size());
  auto run = [&](std::size_t i) {
    try {
      absorb(g, abs, cases[i].first, cases[i].second);
    } catch (const Error& e) {
      fail[i] = "case " + std::to_string(i) + " (|X'| = " + std::to_string(cases[i].first.size()) + "): " + e.what();
    }
  };
  const long long nc = static_cast<long long>(cases.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < nc; ++i) run(static_cast<std::size_t>(i));
  } else {
    for (long long i = 0; i < nc; ++i) run(static_cast<std::size_t>(i));
  }
  AbsorberReport rep;
  rep.total = static_cast<int>(cases.size());
  for (const auto& f : fail) {
    if (f.empty()) {
      ++rep.passed;
    } else if (rep.counterexample.empty()) {
      rep.counterexample = f;
    }
  }
  return rep;
}

}  // namespace cyclecover
