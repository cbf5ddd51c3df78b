#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "cyclecover/errors.hpp"
#include "cyclecover/randgen.hpp"
#include "cyclecover/rng.hpp"
#include "cyclecover/sparseness.hpp"

using namespace cyclecover;

namespace {

Graph random_graph(int n, double p, Rng& rng) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

double dense_norm(const Graph& g, double p) {
  const int n = g.n();
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, -p);
  for (auto [u, v] : g.edges()) {
    m(u, v) += 1.0;
    m(v, u) += 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

// Largest excess over all nonempty (X, Y) by full enumeration of both masks.
double brute_max_excess(const Graph& g, double p, double beta) {
  const int n = g.n();
  double best = -1e300;
  for (std::uint32_t xm = 1; xm < (1u << n); ++xm)
    for (std::uint32_t ym = 1; ym < (1u << n); ++ym) {
      VertexSet x, y;
      for (int v = 0; v < n; ++v) {
        if (xm >> v & 1u) x.push_back(v);
        if (ym >> v & 1u) y.push_back(v);
      }
      best = std::max(best, sparseness_excess(g, x, y, p, beta));
    }
  return best;
}

}  // namespace

TEST(Sparseness, ExcessByCounting) {
  Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});
  // e({0,1},{1,2}) counts ordered pairs: (0,1), (1,2).
  EXPECT_DOUBLE_EQ(sparseness_excess(g, {0, 1}, {1, 2}, 0.25, 0.5), 2.0 - 1.0 - 1.0);
}

TEST(Sparseness, SpectralMatchesDenseEigen) {
  Rng rng(5);
  for (int t = 0; t < 12; ++t) {
    int n = rng.range(5, 60);
    double p = 0.1 + 0.8 * rng.uniform();
    Graph g = random_graph(n, p, rng);
    SpectralOptions opt;
    opt.seed = static_cast<std::uint64_t>(t) + 1;
    SpectralResult r = spectral_beta(g, p, opt);
    double ref = dense_norm(g, p);
    EXPECT_NEAR(r.beta, ref, 1e-5 * std::max(1.0, ref)) << "n=" << n;
  }
}

TEST(Sparseness, MatvecSerialEqualsParallelBitwise) {
  Graph g = gnp(3000, 0.01, 3);
  Rng rng(4);
  std::vector<double> x(static_cast<std::size_t>(g.n()));
  for (auto& v : x) v = rng.uniform() - 0.5;
  std::vector<double> ys, yp;
  shifted_adjacency_matvec(g, 0.01, x, ys, Exec::Serial);
  shifted_adjacency_matvec(g, 0.01, x, yp, Exec::Parallel);
  EXPECT_EQ(ys, yp);
}

TEST(Sparseness, SpectralSerialEqualsParallel) {
  Graph g = gnp(500, 0.05, 8);
  SpectralOptions s, p;
  s.exec = Exec::Serial;
  p.exec = Exec::Parallel;
  EXPECT_EQ(spectral_beta(g, 0.05, s).beta, spectral_beta(g, 0.05, p).beta);
}

TEST(Sparseness, ExactAgreesWithFullEnumeration) {
  Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    int n = rng.range(2, 7);
    Graph g = random_graph(n, 0.6, rng);
    double p = 0.3 * rng.uniform();
    double beta = 1.5 * rng.uniform();
    double brute = brute_max_excess(g, p, beta);
    SparsenessCertificate c = check_sparse_exact(g, p, beta);
    if (brute > 1e-9) {
      ASSERT_TRUE(c.witness.has_value()) << "trial " << t;
      EXPECT_NEAR(c.witness->excess, brute, 1e-9);
      EXPECT_NEAR(sparseness_excess(g, c.witness->x, c.witness->y, p, beta), brute, 1e-9);
    } else {
      EXPECT_FALSE(c.witness.has_value()) << "trial " << t;
    }
  }
}

TEST(Sparseness, CertificateReuse) {
  Graph g = Graph::from_edges(4, {{0, 1}, {2, 3}});
  SparsenessCertificate c = check_sparse_exact(g, 0.5, 2.0);
  ASSERT_FALSE(c.witness);
  EXPECT_TRUE(c.certifies(0.5, 3.0));
  EXPECT_FALSE(c.certifies(0.5, 1.0));
  EXPECT_FALSE(c.certifies(0.4, 3.0));
}

TEST(Sparseness, ExactSizeLimit) { EXPECT_THROW(check_sparse_exact(Graph(21), 0.1, 1.0), Error); }

TEST(Sparseness, ViolationSearchFindsPlantedClique) {
  Rng rng(2);
  Graph base = random_graph(120, 0.05, rng);
  std::vector<Edge> e = base.edges();
  for (int u = 0; u < 20; ++u)
    for (int v = u + 1; v < 20; ++v) e.emplace_back(u, v);
  Graph g = Graph::from_edges(120, e, Graph::Duplicates::Merge);
  auto w = violation_search(g, 0.05, 3.0);
  ASSERT_TRUE(w.has_value());
  EXPECT_GT(sparseness_excess(g, w->x, w->y, 0.05, 3.0), 0.0);
  EXPECT_EQ(w->edges, edge_count_between(g, w->x, w->y));
}

TEST(Sparseness, ViolationSearchSerialEqualsParallel) {
  Graph g = gnp(200, 0.1, 6);
  ViolationSearchOptions s, p;
  s.exec = Exec::Serial;
  s.restarts = p.restarts = 16;
  auto a = violation_search(g, 0.08, 1.0, s);
  auto b = violation_search(g, 0.08, 1.0, p);
  ASSERT_EQ(a.has_value(), b.has_value());
  if (a) {
    EXPECT_EQ(a->x, b->x);
    EXPECT_EQ(a->y, b->y);
  }
}

TEST(Sparseness, ViolationSearchSilentWhenSparse) {
  Graph g = Graph::from_edges(6, {{0, 1}});
  EXPECT_FALSE(violation_search(g, 0.5, 5.0).has_value());
}
