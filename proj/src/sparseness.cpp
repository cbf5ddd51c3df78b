#include "cyclecover/sparseness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cyclecover/errors.hpp"
#include "cyclecover/rng.hpp"

namespace cyclecover {

namespace {

double excess_of(std::int64_t e, std::int64_t a, std::int64_t b, double p, double beta) {
  double ab = static_cast<double>(a) * static_cast<double>(b);
  return static_cast<double>(e) - p * ab - beta * std::sqrt(ab);
}

bool is_violation(double excess, std::int64_t e) { return excess > 1e-9 * std::max<double>(1.0, static_cast<double>(e)); }

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

std::string to_string(SparsenessCertificate::Method m) {
  switch (m) {
    case SparsenessCertificate::Method::Exact: return "exact";
    case SparsenessCertificate::Method::Spectral: return "spectral";
    case SparsenessCertificate::Method::Heuristic: return "heuristic";
  }
  return "unknown";
}

double sparseness_excess(const Graph& g, const VertexSet& x, const VertexSet& y, double p, double beta) {
  return excess_of(edge_count_between(g, x, y), static_cast<std::int64_t>(x.size()), static_cast<std::int64_t>(y.size()), p, beta);
}

SparsenessCertificate check_sparse_exact(const Graph& g, double p, double beta) {
  const int n = g.n();
  if (n > 20) throw Error(ErrorCode::SizeLimit, "check_sparse_exact: n > 20");
  SparsenessCertificate cert;
  cert.p = p;
  cert.beta = beta;
  cert.method = SparsenessCertificate::Method::Exact;

  std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    for (Vertex w : g.neighbors(v)) nbr[static_cast<std::size_t>(v)] |= 1u << w;
  }
  double best = 0.0;
  bool found = false;
  std::uint32_t best_x = 0;
  int best_t = 0;
  std::vector<int> order(static_cast<std::size_t>(n));
  std::vector<int> count(static_cast<std::size_t>(n));
  for (std::uint32_t xm = 1; n > 0 && xm < (1u << n); ++xm) {
    const int a = __builtin_popcount(xm);
    for (int v = 0; v < n; ++v) count[static_cast<std::size_t>(v)] = __builtin_popcount(nbr[static_cast<std::size_t>(v)] & xm);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int u, int v) { return count[static_cast<std::size_t>(u)] > count[static_cast<std::size_t>(v)]; });
    std::int64_t e = 0;
    for (int t = 1; t <= n; ++t) {
      e += count[static_cast<std::size_t>(order[static_cast<std::size_t>(t - 1)])];
      double ex = excess_of(e, a, t, p, beta);
      if (is_violation(ex, e) && (!found || ex > best)) {
        found = true;
        best = ex;
        best_x = xm;
        best_t = t;
      }
    }
  }
  if (found) {
    SparsenessWitness w;
    for (int v = 0; v < n; ++v) {
      if (best_x & (1u << v)) w.x.push_back(v);
      count[static_cast<std::size_t>(v)] = __builtin_popcount(nbr[static_cast<std::size_t>(v)] & best_x);
    }
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int u, int v) { return count[static_cast<std::size_t>(u)] > count[static_cast<std::size_t>(v)]; });
    w.y.assign(order.begin(), order.begin() + best_t);
    std::sort(w.y.begin(), w.y.end());
    w.edges = edge_count_between(g, w.x, w.y);
    w.excess = excess_of(w.edges, static_cast<std::int64_t>(w.x.size()), static_cast<std::int64_t>(w.y.size()), p, beta);
    cert.witness = std::move(w);
  }
  return cert;
}

void shifted_adjacency_matvec(const Graph& g, double p, const std::vector<double>& x, std::vector<double>& y, Exec exec) {
  const int n = g.n();
  y.resize(static_cast<std::size_t>(n));
  // The rank-one term is summed serially so both kernels agree bitwise.
  double total = 0.0;
  for (double v : x) total += v;
  const double shift = p * total;
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (int v = 0; v < n; ++v) {
      double s = 0.0;
      for (Vertex w : g.neighbors(v)) s += x[static_cast<std::size_t>(w)];
      y[static_cast<std::size_t>(v)] = s - shift;
    }
  } else {
    for (int v = 0; v < n; ++v) {
      double s = 0.0;
      for (Vertex w : g.neighbors(v)) s += x[static_cast<std::size_t>(w)];
      y[static_cast<std::size_t>(v)] = s - shift;
    }
  }
}

SpectralResult spectral_beta(const Graph& g, double p, const SpectralOptions& opt) {
  SpectralResult res;
  const int n = g.n();
  if (n == 0) {
    res.converged = true;
    return res;
  }
  Rng rng(opt.seed);
  std::vector<double> v(static_cast<std::size_t>(n)), w, u;
  for (auto& x : v) x = rng.uniform() * 2.0 - 1.0;
  double nv = norm2(v);
  for (auto& x : v) x /= nv;
  double sigma = 0.0;
  for (int it = 1; it <= opt.max_iterations; ++it) {
    shifted_adjacency_matvec(g, p, v, w, opt.exec);
    double s = norm2(w);
    res.iterations = it;
    if (s == 0.0) {
      res.beta = 0.0;
      res.achieved_tol = 0.0;
      res.converged = true;
      return res;
    }
    shifted_adjacency_matvec(g, p, w, u, opt.exec);
    // Residual of v as an eigenvector of M^2 with Rayleigh quotient s^2.
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) {
      double d = u[static_cast<std::size_t>(i)] - s * s * v[static_cast<std::size_t>(i)];
      r2 += d * d;
    }
    double rel_residual = std::sqrt(r2) / (s * s);
    double change = std::abs(s - sigma) / s;
    sigma = std::max(sigma, s);
    res.beta = sigma;
    res.achieved_tol = change;
    if (change <= opt.tol && rel_residual <= 1e-6) {
      res.converged = true;
      return res;
    }
    double nu = norm2(u);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] / nu;
  }
  return res;
}

namespace {

struct LocalSearchResult {
  double excess = -1e300;
  std::vector<std::uint8_t> x, y;
};

LocalSearchResult local_search_restart(const Graph& g, double p, double beta, int max_moves, Rng rng) {
  const int n = g.n();
  LocalSearchResult r;
  r.x.assign(static_cast<std::size_t>(n), 0);
  r.y.assign(static_cast<std::size_t>(n), 0);
  auto& x = r.x;
  auto& y = r.y;
  const std::uint64_t mode = rng.below(3);
  Vertex seed_v = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
  if (mode == 0) {
    x[static_cast<std::size_t>(seed_v)] = 1;
    for (Vertex w : g.neighbors(seed_v)) y[static_cast<std::size_t>(w)] = 1;
  } else if (mode == 1) {
    y[static_cast<std::size_t>(seed_v)] = 1;
    for (Vertex w : g.neighbors(seed_v)) x[static_cast<std::size_t>(w)] = 1;
  } else {
    double q = 0.5 * rng.uniform();
    for (int v = 0; v < n; ++v) {
      x[static_cast<std::size_t>(v)] = rng.bernoulli(q) ? 1 : 0;
      y[static_cast<std::size_t>(v)] = rng.bernoulli(q) ? 1 : 0;
    }
  }
  std::vector<int> deg_x(static_cast<std::size_t>(n), 0), deg_y(static_cast<std::size_t>(n), 0);
  std::int64_t a = 0, b = 0, e = 0;
  for (int v = 0; v < n; ++v) {
    a += x[static_cast<std::size_t>(v)];
    b += y[static_cast<std::size_t>(v)];
    for (Vertex w : g.neighbors(v)) {
      deg_x[static_cast<std::size_t>(v)] += x[static_cast<std::size_t>(w)];
      deg_y[static_cast<std::size_t>(v)] += y[static_cast<std::size_t>(w)];
    }
  }
  for (int v = 0; v < n; ++v) {
    if (y[static_cast<std::size_t>(v)]) e += deg_x[static_cast<std::size_t>(v)];
  }
  double cur = excess_of(e, a, b, p, beta);
  for (int move = 0; move < max_moves; ++move) {
    double best_gain = 1e-12;
    int best_v = -1;
    bool best_in_x = false;
    for (int v = 0; v < n; ++v) {
      const auto sv = static_cast<std::size_t>(v);
      std::int64_t ex = x[sv] ? e - deg_y[sv] : e + deg_y[sv];
      double gx = excess_of(ex, x[sv] ? a - 1 : a + 1, b, p, beta) - cur;
      if (gx > best_gain) {
        best_gain = gx;
        best_v = v;
        best_in_x = true;
      }
      std::int64_t ey = y[sv] ? e - deg_x[sv] : e + deg_x[sv];
      double gy = excess_of(ey, a, y[sv] ? b - 1 : b + 1, p, beta) - cur;
      if (gy > best_gain) {
        best_gain = gy;
        best_v = v;
        best_in_x = false;
      }
    }
    if (best_v < 0) break;
    const auto sv = static_cast<std::size_t>(best_v);
    if (best_in_x) {
      int delta = x[sv] ? -1 : 1;
      e += delta * deg_y[sv];
      a += delta;
      x[sv] = static_cast<std::uint8_t>(x[sv] ^ 1);
      for (Vertex w : g.neighbors(best_v)) deg_x[static_cast<std::size_t>(w)] += delta;
    } else {
      int delta = y[sv] ? -1 : 1;
      e += delta * deg_x[sv];
      b += delta;
      y[sv] = static_cast<std::uint8_t>(y[sv] ^ 1);
      for (Vertex w : g.neighbors(best_v)) deg_y[static_cast<std::size_t>(w)] += delta;
    }
    cur = excess_of(e, a, b, p, beta);
  }
  r.excess = (a > 0 && b > 0) ? cur : -1e300;
  return r;
}

}  // namespace

std::optional<SparsenessWitness> violation_search(const Graph& g, double p, double beta, const ViolationSearchOptions& opt) {
  if (g.n() == 0 || opt.restarts <= 0) return std::nullopt;
  Rng root(opt.seed);
  std::vector<LocalSearchResult> results(static_cast<std::size_t>(opt.restarts));
  if (opt.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < opt.restarts; ++r) {
      results[static_cast<std::size_t>(r)] = local_search_restart(g, p, beta, opt.max_moves, root.derive(static_cast<std::uint64_t>(r)));
    }
  } else {
    for (int r = 0; r < opt.restarts; ++r) {
      results[static_cast<std::size_t>(r)] = local_search_restart(g, p, beta, opt.max_moves, root.derive(static_cast<std::uint64_t>(r)));
    }
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].excess > results[best].excess) best = r;
  }
  SparsenessWitness w;
  w.x = from_mask(results[best].x);
  w.y = from_mask(results[best].y);
  if (w.x.empty() || w.y.empty()) return std::nullopt;
  w.edges = edge_count_between(g, w.x, w.y);
  w.excess = excess_of(w.edges, static_cast<std::int64_t>(w.x.size()), static_cast<std::int64_t>(w.y.size()), p, beta);
  if (!is_violation(w.excess, w.edges)) return std::nullopt;
  return w;
}

}  // namespace cyclecover
