// Acceptance runner: one PASS/FAIL line per criterion. Thresholds and time limits
// are fixed below. Usage: acceptance [criterion ...]
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "cyclecover/absorber.hpp"
#include "cyclecover/connect.hpp"
#include "cyclecover/cover.hpp"
#include "cyclecover/errors.hpp"
#include "cyclecover/expander.hpp"
#include "cyclecover/experiment.hpp"
#include "cyclecover/graph.hpp"
#include "cyclecover/partition.hpp"
#include "cyclecover/randgen.hpp"
#include "cyclecover/rng.hpp"
#include "cyclecover/sparseness.hpp"

using namespace cyclecover;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Independent recounts used by several criteria.

std::int64_t count_crossing(const Graph& g, const std::vector<std::uint8_t>& in1) {
  std::int64_t c = 0;
  for (auto [u, v] : g.edges()) c += in1[static_cast<std::size_t>(u)] != in1[static_cast<std::size_t>(v)];
  return c;
}

/// Ratio of a cut recounted from scratch; negative if the sides are not a nontrivial bipartition.
double recount_cut_ratio(const Graph& g, const Cut& cut) {
  std::vector<std::uint8_t> in1(static_cast<std::size_t>(g.n()), 0), seen(static_cast<std::size_t>(g.n()), 0);
  for (Vertex v : cut.side1) {
    if (v < 0 || v >= g.n() || seen[static_cast<std::size_t>(v)]) return -1.0;
    seen[static_cast<std::size_t>(v)] = 1;
    in1[static_cast<std::size_t>(v)] = 1;
  }
  for (Vertex v : cut.side2) {
    if (v < 0 || v >= g.n() || seen[static_cast<std::size_t>(v)]) return -1.0;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  if (cut.side1.empty() || cut.side2.empty() || cut.side1.size() + cut.side2.size() != static_cast<std::size_t>(g.n())) return -1.0;
  return static_cast<double>(count_crossing(g, in1)) / (static_cast<double>(cut.side1.size()) * static_cast<double>(cut.side2.size()));
}

/// Checks vertex-disjoint cycles covering V(g), at most max_cycles of them.
bool recount_cover(const Graph& g, const CycleCover& c, std::size_t max_cycles) {
  if (c.cycles.size() > max_cycles) return false;
  std::vector<int> hits(static_cast<std::size_t>(g.n()), 0);
  for (const auto& cyc : c.cycles) {
    if (cyc.size() < 3) return false;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      Vertex v = cyc[i];
      if (v < 0 || v >= g.n()) return false;
      ++hits[static_cast<std::size_t>(v)];
      if (!g.has_edge(v, cyc[(i + 1) % cyc.size()])) return false;
    }
  }
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

bool recount_path(const Graph& g, const Path& p) {
  std::set<Vertex> seen;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0 || p[i] >= g.n() || !seen.insert(p[i]).second) return false;
    if (i > 0 && !g.has_edge(p[i - 1], p[i])) return false;
  }
  return true;
}

double measured_gamma(const Graph& g, double p, std::uint64_t seed) {
  CutSearchOptions opt;
  opt.seed = seed;
  opt.restarts = 4;
  auto cut = best_cut_search(g, opt);
  return recount_cut_ratio(g, *cut) / p;
}

Graph random_small_graph(int n, Rng& rng) {
  double p = 0.2 + 0.7 * rng.uniform();
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

// 1. cover_graph against the exhaustive oracle on small connected graphs.
Outcome criterion1() {
  constexpr int kSampledPerSize = 500;
  std::vector<Graph> graphs;
  for (int n = 1; n <= 6; ++n) {
    std::vector<Edge> pairs;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
      std::vector<Edge> e;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1u) e.push_back(pairs[i]);
      Graph g = Graph::from_edges(n, e);
      if (is_connected(g)) graphs.push_back(std::move(g));
    }
  }
  Rng rng(101);
  for (int n = 7; n <= 8; ++n) {
    int kept = 0;
    while (kept < kSampledPerSize) {
      Graph g = random_small_graph(n, rng);
      if (!is_connected(g)) continue;
      graphs.push_back(std::move(g));
      ++kept;
    }
  }
  long long false_success = 0, invalid = 0, successes = 0, runs = 0, oracle_yes = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : false_success, invalid, successes, runs, oracle_yes)
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const Graph& g = graphs[i];
    for (int k : {2, 3}) {
      ++runs;
      bool oracle = exact_cycle_cover_oracle(g, k).exists;
      oracle_yes += oracle;
      PipelineConfig cfg;
      cfg.seed = derive_seed(7, i * 4 + static_cast<std::size_t>(k));
      cfg.exec = Exec::Serial;
      try {
        CycleCover c = cover_graph(g, k, cfg);
        ++successes;
        if (!oracle) ++false_success;
        if (!validate_cycle_cover(g, c).pass || !recount_cover(g, c, static_cast<std::size_t>(k - 1))) ++invalid;
      } catch (const Error&) {
      }
    }
  }
  return {false_success == 0 && invalid == 0,
          fmt("%zu graphs, %lld runs, %lld successes, oracle yes %lld, false successes %lld, invalid %lld", graphs.size(), runs,
              successes, oracle_yes, false_success, invalid)};
}

/// Perfect matching of G_T - Z recounted: template edges only, every remaining vertex once.
bool recount_template_matching(const TemplateGraph& t, const VertexSet& za, const VertexSet& zb, const std::vector<Edge>& m) {
  const int side = 2 * t.size_n;
  std::vector<int> ha(static_cast<std::size_t>(side), 0), hb(static_cast<std::size_t>(side), 0);
  for (Vertex v : za) ha[static_cast<std::size_t>(v)] = 2;
  for (Vertex v : zb) hb[static_cast<std::size_t>(v)] = 2;
  std::set<Edge> edges(t.edges.begin(), t.edges.end());
  for (auto [a, b] : m) {
    if (a < 0 || a >= side || b < 0 || b >= side || !edges.count({a, b})) return false;
    if (ha[static_cast<std::size_t>(a)]++ != 0 || hb[static_cast<std::size_t>(b)]++ != 0) return false;
  }
  for (int v = 0; v < side; ++v)
    if (ha[static_cast<std::size_t>(v)] == 0 || hb[static_cast<std::size_t>(v)] == 0) return false;
  return true;
}

// 2. Template robustness: exhaustive at n = 4, 10^4 samples at n = 50.
Outcome criterion2() {
  TemplateOptions ex;
  ex.mode = VerifyMode::Exhaustive;
  TemplateVerification rep4;
  TemplateGraph t4 = build_template(4, 20, 11, ex, &rep4);
  long long ok4 = 0, total4 = 0;
  for (std::uint32_t ma = 0; ma < 16; ++ma)
    for (std::uint32_t mb = 0; mb < 16; ++mb) {
      if (__builtin_popcount(ma) != __builtin_popcount(mb)) continue;
      VertexSet za, zb;
      for (int i = 0; i < 4; ++i) {
        if (ma >> i & 1u) za.push_back(i);
        if (mb >> i & 1u) zb.push_back(i);
      }
      ++total4;
      auto m = template_perfect_matching(t4, za, zb);
      ok4 += m && recount_template_matching(t4, za, zb, *m);
    }

  constexpr long long kSamples = 10000;
  TemplateOptions sm;
  sm.mode = VerifyMode::Sampled;
  sm.samples = kSamples;
  TemplateVerification rep50;
  TemplateGraph t50 = build_template(50, 20, 12, sm, &rep50);
  Rng rng(13);
  long long ok50 = 0;
  for (long long s = 0; s < kSamples; ++s) {
    int j = rng.range(0, 50);
    auto za = rng.sample(50, j), zb = rng.sample(50, j);
    VertexSet a = make_set(za), b = make_set(zb);
    auto m = template_perfect_matching(t50, a, b);
    ok50 += m && recount_template_matching(t50, a, b, *m);
  }
  bool pass = total4 == 70 && ok4 == total4 && rep4.exhaustive && rep4.passed == rep4.checked && ok50 == kSamples &&
              rep50.checked == kSamples && rep50.passed == kSamples;
  return {pass, fmt("n=4: %lld/%lld recounted (builder %lld/%lld); n=50: %lld/%lld recounted (builder %lld/%lld)", ok4, total4,
                    rep4.passed, rep4.checked, ok50, kSamples, rep50.passed, rep50.checked)};
}

// 3. Absorber over the double cover of G(1500, 0.05) with |U| = 8.
Outcome criterion3() {
  constexpr int kTrials = 200;
  Graph base = gnp(1500, 0.05, 21);
  BipartiteInstance dc = bipartite_double_cover(base);
  const Graph& g = dc.graph;
  Rng rng(22);
  VertexSet order = complement(g.n(), {});
  rng.shuffle(order);
  VertexSet u;
  int want[2] = {4, 4};
  for (Vertex v : order)
    if (want[dc.side[static_cast<std::size_t>(v)]] > 0) {
      --want[dc.side[static_cast<std::size_t>(v)]];
      u.push_back(v);
    }
  u = make_set(u);
  VertexSet w = complement(g.n(), u);
  AbsorberParams params;
  params.seed = 23;
  AbsorberStructure abs = build_absorber(g, u, w, dc.side, params);

  // Own recount: ∅, full and kTrials random balanced requests.
  std::vector<std::pair<VertexSet, VertexSet>> requests{{{}, {}}, {abs.u_in_a, abs.u_in_b}};
  const int cap = static_cast<int>(std::min(abs.u_in_a.size(), abs.u_in_b.size()));
  for (int t = 0; t < kTrials; ++t) {
    int j = rng.range(0, cap);
    VertexSet x, y;
    for (int i : rng.sample(static_cast<int>(abs.u_in_a.size()), j)) x.push_back(abs.u_in_a[static_cast<std::size_t>(i)]);
    for (int i : rng.sample(static_cast<int>(abs.u_in_b.size()), j)) y.push_back(abs.u_in_b[static_cast<std::size_t>(i)]);
    requests.emplace_back(make_set(x), make_set(y));
  }
  int exact = 0;
  for (const auto& [x, y] : requests) {
    try {
      Path p = absorb(g, abs, x, y);
      std::set<Vertex> want_set(abs.vertices.begin(), abs.vertices.end());
      for (Vertex v : x) want_set.erase(v);
      for (Vertex v : y) want_set.erase(v);
      std::set<Vertex> got(p.begin(), p.end());
      exact += recount_path(g, p) && !p.empty() && p.front() == abs.a && p.back() == abs.b && got == want_set;
    } catch (const Error&) {
    }
  }
  AbsorberReport rep = verify_absorber(g, abs, kTrials, 24);
  const int total = kTrials + 2;
  return {exact == total && rep.total == total && rep.passed == total,
          fmt("|V(H)|=%zu, %zu gadgets; recounted %d/%d exact, verify_absorber %d/%d", abs.vertices.size(), abs.gadgets.size(), exact,
              total, rep.passed, rep.total)};
}

struct BallInstance {
  Graph g;
  double p = 0.02;
  double gamma = 0.0;
  VertexSet w;
  VertexSet outside;
};

BallInstance ball_instance() {
  BallInstance b;
  b.g = gnp(2000, b.p, 41);
  b.gamma = measured_gamma(b.g, b.p, 42);
  Rng rng(43);
  VertexSet all = complement(b.g.n(), {});
  rng.shuffle(all);
  b.w = make_set(VertexSet(all.begin(), all.begin() + 1000));
  b.outside = complement(b.g.n(), b.w);
  return b;
}

// 4. Ball growth inside W with a random forbidden set Z.
Outcome criterion4() {
  constexpr int kSamples = 200;
  constexpr double kRequired = 0.99;
  BallInstance b = ball_instance();
  const int n = b.g.n();
  const int zsize = static_cast<int>(std::floor(b.gamma * static_cast<double>(b.w.size()) / 20.0));
  const int len = ball_growth_length(n, b.gamma);
  Rng rng(44);
  VertexSet z;
  for (int i : rng.sample(static_cast<int>(b.w.size()), zsize)) z.push_back(b.w[static_cast<std::size_t>(i)]);
  z = make_set(z);
  std::vector<std::uint8_t> wz = to_mask(n, b.w);
  for (Vertex v : z) wz[static_cast<std::size_t>(v)] = 0;
  int good = 0;
  for (int i : rng.sample(static_cast<int>(b.outside.size()), kSamples)) {
    Vertex x = b.outside[static_cast<std::size_t>(i)];
    VertexSet r = reach(b.g, {x}, b.w, z, len);
    bool inside = std::all_of(r.begin(), r.end(), [&](Vertex v) { return wz[static_cast<std::size_t>(v)] != 0; });
    good += inside && 2 * r.size() > b.w.size();
  }
  double rate = static_cast<double>(good) / kSamples;
  return {rate >= kRequired, fmt("gamma=%.4f, |Z|=%d, l=%d, reach > |W|/2 for %d/%d", b.gamma, zsize, len, good, kSamples)};
}

// 5. connect_all with 30 disjoint demand pairs over 10 seeds.
Outcome criterion5() {
  constexpr int kPairs = 30;
  constexpr int kSeeds = 10;
  BallInstance b = ball_instance();
  const int len = default_connect_length(b.g.n(), b.gamma);
  int ok = 0;
  for (int s = 0; s < kSeeds; ++s) {
    Rng rng(derive_seed(51, static_cast<std::uint64_t>(s)));
    auto idx = rng.sample(static_cast<int>(b.outside.size()), 2 * kPairs);
    ConnectionDemand d;
    for (int i = 0; i < kPairs; ++i)
      d.add(b.outside[static_cast<std::size_t>(idx[2 * i])], b.outside[static_cast<std::size_t>(idx[2 * i + 1])]);
    ConnectOptions opt;
    opt.max_len = len;
    opt.seed = rng.derive(1).key();
    try {
      PathSystem ps = connect_all(b.g, d, b.w, opt);
      // Recount: endpoints, length, internal vertices in W and pairwise disjoint.
      bool good = ps.routes.size() == d.edges.size() && check_path_system(b.g, d, b.w, len, ps).empty();
      std::vector<std::uint8_t> wm = to_mask(b.g.n(), b.w), used(static_cast<std::size_t>(b.g.n()), 0);
      for (std::size_t i = 0; good && i < ps.routes.size(); ++i) {
        const Path& p = ps.routes[i];
        good = recount_path(b.g, p) && p.size() >= 2 && static_cast<int>(p.size()) - 1 <= len && p.front() == d.edges[i].u &&
               p.back() == d.edges[i].v;
        for (std::size_t j = 1; good && j + 1 < p.size(); ++j) {
          auto v = static_cast<std::size_t>(p[j]);
          good = wm[v] && !used[v];
          used[v] = 1;
        }
      }
      ok += good;
    } catch (const Error&) {
    }
  }
  return {ok == kSeeds, fmt("l=%d, %d/%d seeds routed all %d pairs", len, ok, kSeeds, kPairs)};
}

// 6. Partitioning recovers planted blocks.
Outcome criterion6() {
  constexpr int kSeeds = 10;
  constexpr double kC = 0.15;
  constexpr double kAlpha = 0.03;
  const int n = 2400;
  const double p = 0.08;
  const double floor_deg = kC * kC * n * p;
  int ok = 0;
  std::string note;
  for (int s = 0; s < kSeeds; ++s) {
    PlantedInstance inst = planted_blocks(3, n, p, derive_seed(61, static_cast<std::uint64_t>(s)));
    PartitionParams pp;
    pp.c = kC;
    pp.alpha = kAlpha;
    pp.p = p;
    pp.cut.seed = derive_seed(62, static_cast<std::uint64_t>(s));
    try {
      PartitionResult res = partition_into_expanders(inst.graph, pp);
      std::set<VertexSet> planted;
      for (int blk = 0; blk < 3; ++blk) {
        VertexSet b;
        for (int v = 0; v < n; ++v)
          if (inst.block[static_cast<std::size_t>(v)] == blk) b.push_back(v);
        planted.insert(b);
      }
      std::set<VertexSet> got(res.parts.begin(), res.parts.end());
      bool good = res.parts.size() == 3 && got == planted;
      for (const auto& part : res.parts) good = good && inst.graph.induced(part).min_degree() >= floor_deg;
      ok += good;
      if (!good && note.empty()) note = fmt("; seed %d gave %zu parts", s, res.parts.size());
    } catch (const Error& e) {
      if (note.empty()) note = fmt("; seed %d: %s", s, e.what());
    }
  }
  return {ok == kSeeds, fmt("c=%.2f alpha=%.2f floor=%.1f, %d/%d seeds exact%s", kC, kAlpha, floor_deg, ok, kSeeds, note.c_str())};
}

// 7. Spectral beta is a sound sparseness parameter.
Outcome criterion7() {
  constexpr int kGraphs = 100;
  Rng rng(71);
  int clean = 0;
  for (int i = 0; i < kGraphs; ++i) {
    int n = rng.range(2, 16);
    Graph g = random_small_graph(n, rng);
    double p = 0.05 + 0.9 * rng.uniform();
    SpectralOptions so;
    so.seed = rng.derive(static_cast<std::uint64_t>(i)).key();
    double beta = spectral_beta(g, p, so).beta * (1.0 + 1e-6);
    clean += !check_sparse_exact(g, p, beta).witness.has_value();
  }
  return {clean == kGraphs, fmt("%d/%d graphs without witness", clean, kGraphs)};
}

Graph two_block_graph(int n, double pin, double pout, Rng& rng) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli((u < n / 2) == (v < n / 2) ? pin : pout)) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

// 8. Cut search soundness.
Outcome criterion8() {
  constexpr int kTrials = 200;
  Rng rng(81);
  int found = 0, violations = 0, small_checked = 0;
  for (int t = 0; t < kTrials; ++t) {
    int n = t % 2 == 0 ? rng.range(4, 14) : rng.range(15, 200);
    double pin = 0.3 + 0.6 * rng.uniform();
    double pout = pin * rng.uniform();
    Graph g = two_block_graph(n, pin, pout, rng);
    double q = (pout + pin) / 2.0 * (0.3 + rng.uniform());
    CutSearchOptions opt;
    opt.seed = rng.derive(static_cast<std::uint64_t>(t)).key();
    if (auto cut = sparse_cut_search(g, q, opt)) {
      ++found;
      double r = recount_cut_ratio(g, *cut);
      if (!(r >= 0.0 && r < q)) ++violations;
    }
    if (n <= 14) {
      ++small_checked;
      double exact = expansion_exact(g);
      if (auto best = best_cut_search(g, opt)) {
        double r = recount_cut_ratio(g, *best);
        if (!(r >= 0.0 && r >= exact - 1e-12)) ++violations;
      }
    }
  }
  return {violations == 0, fmt("%d trials, %d cuts returned, %d small graphs against exact, %d violations", kTrials, found,
                               small_checked, violations)};
}

// 9. End-to-end covers under adversarial deletion.
Outcome criterion9() {
  constexpr int kSeeds = 20;
  constexpr double kRate2 = 0.9;
  constexpr double kRate3 = 0.8;
  struct Run {
    int ok = 0, untagged = 0, invalid = 0, wrong_route = 0, weak_instance = 0;
    std::string failures;
  };
  auto run = [&](ExperimentSpec spec, std::size_t max_cycles, double min_deg_floor, Run& out) {
    for (int s = 0; s < kSeeds; ++s) {
      auto [g0, applied] = make_instance(spec, s, spec.adversary.r);
      ExperimentSpec base = spec;
      base.adversary.r = 0.0;
      base.adversary.keep_fraction = 0.0;
      Graph original = make_instance(base, s, 0.0).first;
      if (!audit_adversary(original, g0, applied) || g0.min_degree() < min_deg_floor) ++out.weak_instance;
      PipelineConfig cfg = spec.pipeline;
      cfg.seed = derive_seed(derive_seed(spec.seed, static_cast<std::uint64_t>(s)), 3);
      CoverStats stats;
      try {
        CycleCover c = cover_graph(g0, spec.k, cfg, &stats);
        bool valid = validate_cycle_cover(g0, c).pass && recount_cover(g0, c, max_cycles);
        if (!valid) {
          ++out.invalid;
        } else if (stats.route != "absorber") {
          ++out.wrong_route;
        } else {
          ++out.ok;
        }
      } catch (const Error& e) {
        if (e.stage().empty()) ++out.untagged;
        out.failures += fmt(" %s@%s", std::string(to_string(e.code())).c_str(), e.stage().c_str());
      }
    }
  };
  ExperimentSpec s2;
  s2.instance = {"gnp", 2000, 0.05, 0, 1};
  s2.adversary.strategy = AdversaryStrategy::RandomDeletion;
  s2.adversary.r = 0.35;
  s2.k = 2;
  s2.seed = 91;
  Run r2;
  run(s2, 1, 0.0, r2);

  ExperimentSpec s3;
  s3.instance = {"gnp", 3000, 0.04, 0, 1};
  s3.adversary.strategy = AdversaryStrategy::CliqueSplit;
  s3.adversary.parts = 3;
  s3.adversary.keep_fraction = 1.0 / 3.0 + 0.15;
  s3.k = 3;
  s3.seed = 92;
  Run r3;
  run(s3, 2, (1.0 / 3.0 + 0.15) * 3000 * 0.04, r3);

  bool pass = r2.ok >= kRate2 * kSeeds && r3.ok >= kRate3 * kSeeds && r2.invalid + r3.invalid == 0 &&
              r2.untagged + r3.untagged == 0 && r2.weak_instance + r3.weak_instance == 0;
  return {pass, fmt("k=2: %d/%d Hamilton cycles; k=3: %d/%d covers; invalid %d, untagged %d, non-absorber route %d, bad instances %d;"
                    " failures:%s%s",
                    r2.ok, kSeeds, r3.ok, kSeeds, r2.invalid + r3.invalid, r2.untagged + r3.untagged, r2.wrong_route + r3.wrong_route,
                    r2.weak_instance + r3.weak_instance, r2.failures.empty() && r3.failures.empty() ? " none" : "",
                    (r2.failures + r3.failures).c_str())};
}

// 10. Random induced quarter-subsets remain expanders.
Outcome criterion10() {
  constexpr int kSubsets = 100;
  constexpr double kRequired = 0.99;
  constexpr double kGamma1Fraction = 0.25;
  const double p = 0.05;
  Graph g = gnp(2000, p, 101);
  const double gamma = measured_gamma(g, p, 102);
  const double gamma1 = kGamma1Fraction * gamma;
  Rng rng(103);
  std::vector<VertexSet> subsets;
  for (int i = 0; i < kSubsets; ++i) subsets.push_back(make_set(rng.sample(g.n(), g.n() / 4)));
  int passed = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : passed)
  for (int i = 0; i < kSubsets; ++i) {
    CutSearchOptions opt;
    opt.seed = derive_seed(104, static_cast<std::uint64_t>(i));
    opt.exec = Exec::Serial;
    ExpansionVerdict v = certify_expander(g.induced(subsets[static_cast<std::size_t>(i)]), gamma1 * p, opt);
    passed += v.kind != ExpansionVerdict::Kind::CutFound;
  }
  return {passed >= kRequired * kSubsets,
          fmt("gamma=%.4f gamma1=%.4f, %d/%d subsets without a sparse cut", gamma, gamma1, passed, kSubsets)};
}

// 11. Replay gives byte-identical reports at any thread count.
Outcome criterion11() {
  ExperimentSpec spec;
  spec.instance = {"gnp", 400, 0.08, 0, 1};
  spec.adversary.strategy = AdversaryStrategy::RandomDeletion;
  spec.adversary.r = 0.25;
  spec.k = 2;
  spec.trials = 6;
  spec.seed = 111;
  spec.sweep = SweepSpec{0.1, 0.6, 3, 3};
  const ExperimentSpec replayed = parse_spec(nlohmann::json::parse(spec_to_json(spec).dump()));
  const int saved = omp_get_max_threads();
  std::vector<std::string> texts;
  for (int threads : {1, 2, 3, 8}) {
    omp_set_num_threads(threads);
    texts.push_back(report_text(replayed, run_experiment(replayed)));
  }
  omp_set_num_threads(saved);
  texts.push_back(report_text(spec, run_experiment(spec)));
  bool same = std::all_of(texts.begin(), texts.end(), [&](const std::string& t) { return t == texts.front(); });
  return {same && !texts.front().empty(), fmt("%zu runs at 1/2/3/8/default threads, %s, %zu bytes", texts.size(),
                                               same ? "identical" : "different", texts.front().size())};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // non-positive: no limit
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "exact-oracle agreement", 300, criterion1},
      {2, "template robustness", 60, criterion2},
      {3, "absorber contract", 120, criterion3},
      {4, "ball growth", 60, criterion4},
      {5, "connecting", 60, criterion5},
      {6, "partitioning", 60, criterion6},
      {7, "spectral sparseness soundness", 60, criterion7},
      {8, "expansion soundness", 0, criterion8},
      {9, "end-to-end resilience", 1800, criterion9},
      {10, "inheritance sampling", 0, criterion10},
      {11, "determinism", 0, criterion11},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = c.limit_seconds <= 0 || secs < c.limit_seconds;
    bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("criterion %2d %s  %s: %s (%.1f s%s)\n", c.id, pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs,
                in_time ? "" : ", over time limit");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
