#include "cyclecover/expander.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cyclecover/errors.hpp"
#include "cyclecover/rng.hpp"

namespace cyclecover {

namespace {

// a/b < c/d for nonnegative a, c and positive b, d.
bool ratio_less(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) { return a * d < c * b; }

double ratio_of(std::int64_t crossing, std::int64_t s, std::int64_t t) {
  return static_cast<double>(crossing) / (static_cast<double>(s) * static_cast<double>(t));
}

void project_out_mean(std::vector<double>& x) {
  double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  for (auto& v : x) v -= mean;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void laplacian_apply(const Graph& g, const std::vector<double>& x, std::vector<double>& y) {
  const int n = g.n();
  y.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    double s = static_cast<double>(g.degree(v)) * x[static_cast<std::size_t>(v)];
    for (Vertex w : g.neighbors(v)) s -= x[static_cast<std::size_t>(w)];
    y[static_cast<std::size_t>(v)] = s;
  }
}

// Conjugate gradients for L y = b with b orthogonal to the all-ones vector.
std::vector<double> solve_laplacian(const Graph& g, const std::vector<double>& b, int max_it, double tol) {
  const std::size_t n = b.size();
  std::vector<double> y(n, 0.0), r = b, d = b, ld;
  double rr = dot(r, r);
  const double stop = tol * tol * rr;
  for (int it = 0; it < max_it && rr > stop && rr > 0.0; ++it) {
    laplacian_apply(g, d, ld);
    double dld = dot(d, ld);
    if (dld <= 0.0) break;
    double alpha = rr / dld;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += alpha * d[i];
      r[i] -= alpha * ld[i];
    }
    double rr_new = dot(r, r);
    double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < n; ++i) d[i] = r[i] + beta * d[i];
  }
  return y;
}

struct SearchState {
  std::int64_t crossing = 0;
  std::int64_t size = 0;  // |side1|
  std::vector<std::uint8_t> in1;
};

// Single-vertex moves while the ratio strictly decreases (lowest id on ties).
void improve_by_moves(const Graph& g, SearchState& st, int max_moves) {
  const int n = g.n();
  std::vector<int> deg1(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    for (Vertex w : g.neighbors(v)) deg1[static_cast<std::size_t>(v)] += st.in1[static_cast<std::size_t>(w)];
  }
  for (int move = 0; move < max_moves; ++move) {
    std::int64_t best_c = st.crossing, best_s = st.size;
    int best_v = -1;
    for (int v = 0; v < n; ++v) {
      const auto sv = static_cast<std::size_t>(v);
      std::int64_t d = g.degree(v), d1 = deg1[sv];
      std::int64_t c, s;
      if (st.in1[sv]) {
        if (st.size == 1) continue;
        c = st.crossing + d1 - (d - d1);
        s = st.size - 1;
      } else {
        if (st.size == n - 1) continue;
        c = st.crossing + (d - d1) - d1;
        s = st.size + 1;
      }
      if (ratio_less(c, s * (n - s), best_c, best_s * (n - best_s))) {
        best_c = c;
        best_s = s;
        best_v = v;
      }
    }
    if (best_v < 0) break;
    int delta = st.in1[static_cast<std::size_t>(best_v)] ? -1 : 1;
    st.in1[static_cast<std::size_t>(best_v)] = static_cast<std::uint8_t>(st.in1[static_cast<std::size_t>(best_v)] ^ 1);
    for (Vertex w : g.neighbors(best_v)) deg1[static_cast<std::size_t>(w)] += delta;
    st.crossing = best_c;
    st.size = best_s;
  }
}

SearchState spectral_restart(const Graph& g, const CutSearchOptions& opt, Rng rng) {
  const int n = g.n();
  std::vector<double> x(static_cast<std::size_t>(n));
  for (auto& v : x) v = rng.uniform() - 0.5;
  project_out_mean(x);
  for (int it = 0; it < opt.inverse_iterations; ++it) {
    double nx = std::sqrt(dot(x, x));
    if (nx == 0.0) break;
    for (auto& v : x) v /= nx;
    x = solve_laplacian(g, x, opt.cg_iterations, opt.cg_tol);
    project_out_mean(x);
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return x[static_cast<std::size_t>(a)] < x[static_cast<std::size_t>(b)]; });
  SearchState st;
  st.in1.assign(static_cast<std::size_t>(n), 0);
  std::int64_t cut = 0, best_c = 0, best_s = 0;
  int best_prefix = -1;
  std::vector<std::uint8_t> in(static_cast<std::size_t>(n), 0);
  for (int i = 0; i + 1 < n; ++i) {
    Vertex v = order[static_cast<std::size_t>(i)];
    std::int64_t inside = 0;
    for (Vertex w : g.neighbors(v)) inside += in[static_cast<std::size_t>(w)];
    cut += g.degree(v) - 2 * inside;
    in[static_cast<std::size_t>(v)] = 1;
    std::int64_t s = i + 1;
    if (best_prefix < 0 || ratio_less(cut, s * (n - s), best_c, best_s * (n - best_s))) {
      best_prefix = i;
      best_c = cut;
      best_s = s;
    }
  }
  // A minimum-degree singleton competes with the sweep.
  Vertex vmin = 0;
  for (int v = 1; v < n; ++v) {
    if (g.degree(v) < g.degree(vmin)) vmin = v;
  }
  if (ratio_less(g.degree(vmin), n - 1, best_c, best_s * (n - best_s))) {
    st.in1[static_cast<std::size_t>(vmin)] = 1;
    st.crossing = g.degree(vmin);
    st.size = 1;
  } else {
    for (int i = 0; i <= best_prefix; ++i) st.in1[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
    st.crossing = best_c;
    st.size = best_s;
  }
  improve_by_moves(g, st, 2 * n);
  return st;
}

}  // namespace

Cut make_cut(const Graph& g, const VertexSet& side1) {
  Cut c;
  c.side1 = make_set(side1);
  c.side2 = complement(g.n(), c.side1);
  if (c.side1.empty() || c.side2.empty()) throw Error(ErrorCode::Argument, "make_cut: both sides must be nonempty");
  c.crossing = edge_count_between(g, c.side1, c.side2);
  c.ratio = ratio_of(c.crossing, static_cast<std::int64_t>(c.side1.size()), static_cast<std::int64_t>(c.side2.size()));
  return c;
}

std::string to_string(ExpansionVerdict::Kind k) {
  switch (k) {
    case ExpansionVerdict::Kind::CertifiedExact: return "certified-exact";
    case ExpansionVerdict::Kind::CutFound: return "cut-found";
    case ExpansionVerdict::Kind::Unknown: return "unknown";
  }
  return "unknown";
}

ExactExpansion expansion_exact_with_cut(const Graph& g) {
  const int n = g.n();
  if (n > 20) throw Error(ErrorCode::SizeLimit, "expansion_exact: n > 20");
  ExactExpansion res;
  if (n <= 1) {
    res.q_star = std::numeric_limits<double>::infinity();
    return res;
  }
  std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    for (Vertex w : g.neighbors(v)) nbr[static_cast<std::size_t>(v)] |= 1u << w;
  }
  const std::uint32_t full = (1u << n) - 1;
  // Gray-code walk over subsets S of {1..n-1}; vertex 0 always stays outside S.
  std::uint32_t s_mask = 0;
  std::int64_t cut = 0;
  std::int64_t best_c = -1, best_s = 1;
  std::uint32_t best_mask = 0;
  const std::uint32_t count = 1u << (n - 1);
  for (std::uint32_t i = 1; i < count; ++i) {
    int v = __builtin_ctz(i) + 1;
    std::uint32_t bit = 1u << v;
    std::uint32_t others = s_mask & ~bit;
    std::int64_t in_s = __builtin_popcount(nbr[static_cast<std::size_t>(v)] & others);
    std::int64_t out_s = __builtin_popcount(nbr[static_cast<std::size_t>(v)] & ~s_mask & full & ~bit);
    if (s_mask & bit) {
      cut += in_s - out_s;
    } else {
      cut += out_s - in_s;
    }
    s_mask ^= bit;
    std::int64_t s = __builtin_popcount(s_mask);
    if (best_c < 0 || ratio_less(cut, s * (n - s), best_c, best_s * (n - best_s)) ||
        (!ratio_less(best_c, best_s * (n - best_s), cut, s * (n - s)) && s_mask < best_mask)) {
      best_c = cut;
      best_s = s;
      best_mask = s_mask;
    }
  }
  VertexSet side1;
  for (int v = 0; v < n; ++v) {
    if (best_mask & (1u << v)) side1.push_back(v);
  }
  res.argmin = make_cut(g, side1);
  res.q_star = res.argmin->ratio;
  return res;
}

double expansion_exact(const Graph& g) { return expansion_exact_with_cut(g).q_star; }

std::optional<Cut> best_cut_search(const Graph& g, const CutSearchOptions& opt) {
  const int n = g.n();
  if (n <= 1) return std::nullopt;
  auto comps = connected_components(g);
  if (comps.size() > 1) return make_cut(g, comps.front());
  const int restarts = std::max(1, opt.restarts);
  Rng root(opt.seed);
  std::vector<SearchState> states(static_cast<std::size_t>(restarts));
  if (opt.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < restarts; ++r) states[static_cast<std::size_t>(r)] = spectral_restart(g, opt, root.derive(static_cast<std::uint64_t>(r)));
  } else {
    for (int r = 0; r < restarts; ++r) states[static_cast<std::size_t>(r)] = spectral_restart(g, opt, root.derive(static_cast<std::uint64_t>(r)));
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < states.size(); ++r) {
    const auto& a = states[r];
    const auto& b = states[best];
    if (ratio_less(a.crossing, a.size * (n - a.size), b.crossing, b.size * (n - b.size))) best = r;
  }
  return make_cut(g, from_mask(states[best].in1));
}

std::optional<Cut> sparse_cut_search(const Graph& g, double q, const CutSearchOptions& opt) {
  if (!(q > 0.0)) throw Error(ErrorCode::Argument, "sparse_cut_search: q must be positive");
  auto cut = best_cut_search(g, opt);
  if (cut && cut->ratio < q) return cut;
  return std::nullopt;
}

ExpansionVerdict certify_expander(const Graph& g, double q, const CutSearchOptions& opt) {
  ExpansionVerdict v;
  v.threshold = q;
  if (g.n() <= 20) {
    auto ex = expansion_exact_with_cut(g);
    if (q <= ex.q_star) {
      v.kind = ExpansionVerdict::Kind::CertifiedExact;
      v.q_star = ex.q_star;
    } else {
      v.kind = ExpansionVerdict::Kind::CutFound;
      v.q_star = ex.q_star;
      v.cut = ex.argmin;
    }
    return v;
  }
  if (q > 0.0) {
    if (auto cut = sparse_cut_search(g, q, opt)) {
      v.kind = ExpansionVerdict::Kind::CutFound;
      v.cut = std::move(cut);
      return v;
    }
  }
  v.kind = ExpansionVerdict::Kind::Unknown;
  return v;
}

bool edges_out_bound_check(const Graph& g, const VertexSet& a, double alpha, int n, double p, double beta) {
  check_set(g.n(), a, "edges_out_bound_check");
  const double need = static_cast<double>(a.size()) * p + alpha * n * p;
  for (Vertex v : a) {
    if (g.degree(v) < need - 1e-9) {
      throw Error(ErrorCode::Precondition, "edges_out_bound_check: vertex " + std::to_string(v) + " has degree below |A|p + alpha n p");
    }
  }
  if (a.empty()) return true;
  auto out = edge_count_between(g, a, complement(g.n(), a));
  return static_cast<double>(out) >= (alpha * n * p - beta) * static_cast<double>(a.size()) - 1e-9;
}

namespace {

MaxCut max_cut_restart(const Graph& g, Rng rng) {
  const int n = g.n();
  MaxCut mc;
  mc.side.resize(static_cast<std::size_t>(n));
  for (auto& s : mc.side) s = static_cast<std::uint8_t>(rng() >> 63);
  std::vector<int> same(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    for (Vertex w : g.neighbors(v)) same[static_cast<std::size_t>(v)] += mc.side[static_cast<std::size_t>(v)] == mc.side[static_cast<std::size_t>(w)];
  }
  bool moved = true;
  while (moved) {
    moved = false;
    for (int v = 0; v < n; ++v) {
      const auto sv = static_cast<std::size_t>(v);
      if (2 * same[sv] > g.degree(v)) {
        for (Vertex w : g.neighbors(v)) {
          const auto sw = static_cast<std::size_t>(w);
          same[sw] += mc.side[sw] == mc.side[sv] ? -1 : 1;
        }
        same[sv] = g.degree(v) - same[sv];
        mc.side[sv] = static_cast<std::uint8_t>(mc.side[sv] ^ 1);
        moved = true;
      }
    }
  }
  std::int64_t within = 0;
  for (int v = 0; v < n; ++v) within += same[static_cast<std::size_t>(v)];
  mc.cut = g.m() - within / 2;
  return mc;
}

}  // namespace

MaxCut max_cut_local_search(const Graph& g, int restarts, std::uint64_t seed, Exec exec) {
  restarts = std::max(1, restarts);
  Rng root(seed);
  std::vector<MaxCut> runs(static_cast<std::size_t>(restarts));
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < restarts; ++r) runs[static_cast<std::size_t>(r)] = max_cut_restart(g, root.derive(static_cast<std::uint64_t>(r)));
  } else {
    for (int r = 0; r < restarts; ++r) runs[static_cast<std::size_t>(r)] = max_cut_restart(g, root.derive(static_cast<std::uint64_t>(r)));
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].cut > runs[best].cut) best = r;
  }
  return runs[best];
}

BipartiteSubgraph bipartite_expander_subgraph(const Graph& g, int restarts, std::uint64_t seed, std::optional<double> q, Exec exec) {
  BipartiteSubgraph out;
  auto mc = max_cut_local_search(g, restarts, seed, exec);
  out.side = mc.side;
  out.subgraph = g.crossing_subgraph(mc.side);
  if (!q && g.n() <= 20) q = expansion_exact(g);
  if (q && std::isfinite(*q)) {
    CutSearchOptions opt;
    opt.seed = derive_seed(seed, 0xB1);
    opt.exec = exec;
    out.verdict = certify_expander(out.subgraph, *q / 2.0, opt);
  } else {
    out.verdict.kind = ExpansionVerdict::Kind::Unknown;
    out.verdict.threshold = q ? *q / 2.0 : 0.0;
  }
  return out;
}

}  // namespace cyclecover
