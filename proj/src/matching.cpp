#include "cyclecover/matching.hpp"

#include <limits>
#include <queue>

namespace cyclecover {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct HopcroftKarp {
  int nl, nr;
  const std::vector<std::vector<int>>& adj;
  std::vector<int> ml, mr, dist;

  HopcroftKarp(int l, int r, const std::vector<std::vector<int>>& a)
      : nl(l), nr(r), adj(a), ml(static_cast<std::size_t>(l), -1), mr(static_cast<std::size_t>(r), -1), dist(static_cast<std::size_t>(l)) {}

  bool bfs() {
    std::queue<int> q;
    bool found = false;
    for (int u = 0; u < nl; ++u) {
      if (ml[static_cast<std::size_t>(u)] < 0) {
        dist[static_cast<std::size_t>(u)] = 0;
        q.push(u);
      } else {
        dist[static_cast<std::size_t>(u)] = kInf;
      }
    }
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[static_cast<std::size_t>(u)]) {
        int w = mr[static_cast<std::size_t>(v)];
        if (w < 0) {
          found = true;
        } else if (dist[static_cast<std::size_t>(w)] == kInf) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    for (int v : adj[static_cast<std::size_t>(u)]) {
      int w = mr[static_cast<std::size_t>(v)];
      if (w < 0 || (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(u)] + 1 && dfs(w))) {
        ml[static_cast<std::size_t>(u)] = v;
        mr[static_cast<std::size_t>(v)] = u;
        return true;
      }
    }
    dist[static_cast<std::size_t>(u)] = kInf;
    return false;
  }

  void run() {
    while (bfs()) {
      for (int u = 0; u < nl; ++u) {
        if (ml[static_cast<std::size_t>(u)] < 0) dfs(u);
      }
    }
  }
};

}  // namespace

std::vector<int> max_bipartite_matching(int n_left, int n_right, const std::vector<std::vector<int>>& adj_left) {
  HopcroftKarp hk(n_left, n_right, adj_left);
  hk.run();
  return hk.ml;
}

int matching_size(const std::vector<int>& match_left) {
  int s = 0;
  for (int v : match_left) s += v >= 0 ? 1 : 0;
  return s;
}

}  // namespace cyclecover
