#include "cyclecover/steering.hpp"

#include <algorithm>

#include "cyclecover/errors.hpp"

namespace cyclecover {

namespace {

class RotationState {
 public:
  RotationState(const Graph& g, const std::vector<std::uint8_t>& allowed, Rng& rng, ExtensionRule rule)
      : g_(g), allowed_(allowed), rng_(rng), rule_(rule), pos_(static_cast<std::size_t>(g.n()), -1), free_(static_cast<std::size_t>(g.n()), 0) {
    for (Vertex v = 0; v < g.n(); ++v) {
      if (!allowed_[static_cast<std::size_t>(v)]) continue;
      for (Vertex x : g.neighbors(v))
        if (allowed_[static_cast<std::size_t>(x)]) ++free_[static_cast<std::size_t>(v)];
    }
  }

  const Path& path() const { return p_; }
  int pos(Vertex v) const { return pos_[static_cast<std::size_t>(v)]; }

  void add(Vertex v) {
    pos_[static_cast<std::size_t>(v)] = static_cast<int>(p_.size());
    p_.push_back(v);
    for (Vertex x : g_.neighbors(v))
      if (allowed_[static_cast<std::size_t>(x)]) --free_[static_cast<std::size_t>(x)];
  }

  /// Free neighbour of the tail chosen by the extension rule, or -1.
  Vertex extension() {
    Vertex best = -1;
    int best_key = 0;
    int ties = 0;
    for (Vertex x : g_.neighbors(p_.back())) {
      if (!allowed_[static_cast<std::size_t>(x)] || pos(x) >= 0) continue;
      int key = free_[static_cast<std::size_t>(x)];
      if (rule_ == ExtensionRule::MostFree) key = -key;
      if (best < 0 || key < best_key) {
        best = x;
        best_key = key;
        ties = 1;
      } else if (key == best_key && rng_.below(static_cast<std::uint64_t>(++ties)) == 0) {
        best = x;
      }
    }
    return best;
  }

  void reverse_from(std::size_t i) {
    std::reverse(p_.begin() + static_cast<std::ptrdiff_t>(i), p_.end());
    for (std::size_t j = i; j < p_.size(); ++j) pos_[static_cast<std::size_t>(p_[j])] = static_cast<int>(j);
  }

  /// Random rotation at the tail; false if the tail has no usable neighbour.
  bool rotate() {
    const int len = static_cast<int>(p_.size());
    std::vector<int> cand;
    for (Vertex x : g_.neighbors(p_.back())) {
      int i = pos(x);
      if (i >= 0 && i <= len - 3) cand.push_back(i);
    }
    if (cand.empty()) return false;
    int i = cand[static_cast<std::size_t>(rng_.below(cand.size()))];
    reverse_from(static_cast<std::size_t>(i + 1));
    return true;
  }

  /// Reorders the path into a cycle sequence if head-tail or a rotation closes it.
  bool close() {
    const int len = static_cast<int>(p_.size());
    if (len < 3) return false;
    if (g_.has_edge(p_.front(), p_.back())) return true;
    for (Vertex x : g_.neighbors(p_.back())) {
      int i = pos(x);
      if (i >= 1 && i <= len - 3 && g_.has_edge(p_[static_cast<std::size_t>(i + 1)], p_.front())) {
        reverse_from(static_cast<std::size_t>(i + 1));
        return true;
      }
    }
    return false;
  }

  /// With the path closed as a cycle, finds a free vertex w next to cycle vertex c,
  /// rotates the cycle so c is the tail, and appends w.
  bool extend_cycle(const std::vector<Vertex>& component) {
    for (Vertex w : component) {
      if (pos(w) >= 0) continue;
      for (Vertex c : g_.neighbors(w)) {
        int j = pos(c);
        if (j < 0) continue;
        std::rotate(p_.begin(), p_.begin() + j + 1, p_.end());
        for (std::size_t t = 0; t < p_.size(); ++t) pos_[static_cast<std::size_t>(p_[t])] = static_cast<int>(t);
        add(w);
        return true;
      }
    }
    return false;
  }

  void reverse_all() { reverse_from(0); }

 private:
  const Graph& g_;
  const std::vector<std::uint8_t>& allowed_;
  Rng& rng_;
  ExtensionRule rule_;
  Path p_;
  std::vector<int> pos_;
  std::vector<int> free_;
};

std::vector<Vertex> component_of(const Graph& g, const std::vector<std::uint8_t>& allowed, Vertex start) {
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(g.n()), 0);
  std::vector<Vertex> comp{start};
  seen[static_cast<std::size_t>(start)] = 1;
  for (std::size_t h = 0; h < comp.size(); ++h)
    for (Vertex x : g.neighbors(comp[h]))
      if (allowed[static_cast<std::size_t>(x)] && !seen[static_cast<std::size_t>(x)]) {
        seen[static_cast<std::size_t>(x)] = 1;
        comp.push_back(x);
      }
  std::sort(comp.begin(), comp.end());
  return comp;
}

}  // namespace

std::optional<Cycle> grow_cycle(const Graph& g, const std::vector<std::uint8_t>& allowed, Vertex start, Rng& rng, const RotationOptions& opt) {
  if (static_cast<int>(allowed.size()) != g.n()) throw Error(ErrorCode::Argument, "grow_cycle: mask size mismatch");
  if (start < 0 || start >= g.n() || !allowed[static_cast<std::size_t>(start)]) throw Error(ErrorCode::Argument, "grow_cycle: start not allowed");
  const std::vector<Vertex> comp = component_of(g, allowed, start);
  const long long budget = opt.rotation_budget > 0 ? opt.rotation_budget : 20LL * static_cast<long long>(comp.size()) + 1000;
  if (comp.size() < 3) return std::nullopt;

  RotationState st(g, allowed, rng, opt.rule);
  st.add(start);
  std::optional<Cycle> best;
  long long rotations = 0;
  while (true) {
    while (true) {
      Vertex w = st.extension();
      if (w < 0) {
        st.reverse_all();
        w = st.extension();
      }
      if (w < 0) break;
      st.add(w);
    }
    if (st.close()) {
      if (!best || st.path().size() > best->size()) best = st.path();
      if (st.path().size() == comp.size()) return best;
      if (st.extend_cycle(comp)) continue;
      return best;
    }
    if (rotations++ >= budget) break;
    if (rng.below(2) == 0) st.reverse_all();
    if (!st.rotate()) {
      st.reverse_all();
      if (!st.rotate()) break;
    }
  }
  // Budget spent without closing: keep the longest cycle inside the current path.
  const Path& p = st.path();
  const int len = static_cast<int>(p.size());
  for (Vertex x : g.neighbors(p.back())) {
    int i = st.pos(x);
    if (i >= 0 && i <= len - 3 && (!best || static_cast<std::size_t>(len - i) > best->size())) best = Cycle(p.begin() + i, p.end());
  }
  return best;
}

std::optional<Path> steer_tail(const Graph& g, Path p, const std::vector<std::uint8_t>& tail_target, long long budget, Rng& rng) {
  if (p.empty()) return std::nullopt;
  std::vector<int> pos(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < p.size(); ++i) pos[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  const int len = static_cast<int>(p.size());
  std::vector<int> cand;
  for (long long it = 0; it <= budget; ++it) {
    if (tail_target[static_cast<std::size_t>(p.back())]) return p;
    if (it == budget) break;
    cand.clear();
    for (Vertex x : g.neighbors(p.back())) {
      int i = pos[static_cast<std::size_t>(x)];
      if (i >= 0 && i <= len - 3) cand.push_back(i);
    }
    if (cand.empty()) return std::nullopt;
    // Prefer a rotation that lands on a target immediately.
    int pick = -1;
    for (int i : cand)
      if (tail_target[static_cast<std::size_t>(p[static_cast<std::size_t>(i + 1)])]) {
        pick = i;
        break;
      }
    if (pick < 0) pick = cand[static_cast<std::size_t>(rng.below(cand.size()))];
    std::reverse(p.begin() + pick + 1, p.end());
    for (int j = pick + 1; j < len; ++j) pos[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] = j;
  }
  return std::nullopt;
}

std::optional<Path> open_cycle_steered(const Graph& g, const Cycle& c, const std::vector<std::uint8_t>& head_target,
                                       const std::vector<std::uint8_t>& tail_target, long long budget, Rng& rng) {
  const std::size_t len = c.size();
  if (len == 0) return std::nullopt;
  auto opened = [&](std::size_t i, bool reversed) {
    Path p;
    p.reserve(len);
    for (std::size_t t = 0; t < len; ++t) p.push_back(reversed ? c[(i + len - t) % len] : c[(i + t) % len]);
    return p;
  };
  // Head at c[i], tail at its predecessor (or successor when reversed).
  for (std::size_t i = 0; i < len; ++i) {
    if (!head_target[static_cast<std::size_t>(c[i])]) continue;
    if (tail_target[static_cast<std::size_t>(c[(i + len - 1) % len])]) return opened(i, false);
    if (tail_target[static_cast<std::size_t>(c[(i + 1) % len])]) return opened(i, true);
  }
  std::vector<std::size_t> heads;
  for (std::size_t i = 0; i < len; ++i)
    if (head_target[static_cast<std::size_t>(c[i])]) heads.push_back(i);
  if (heads.empty()) return std::nullopt;
  rng.shuffle(heads);
  const std::size_t tries = std::min<std::size_t>(heads.size(), 8);
  for (std::size_t h = 0; h < tries; ++h) {
    auto r = steer_tail(g, opened(heads[h], h % 2 == 1), tail_target, budget / static_cast<long long>(tries) + 1, rng);
    if (r) return r;
  }
  return std::nullopt;
}

}  // namespace cyclecover
