#include "cyclecover/partition.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "cyclecover/errors.hpp"
#include "cyclecover/rng.hpp"

namespace cyclecover {

namespace {

struct ExpansionScan {
  bool refuted = false;
  bool provisional = false;
  int index = -1;
  std::optional<Cut> cut;  // host ids
  std::vector<ExpansionVerdict> verdicts;
};

Cut lift_cut(const Graph& g, const VertexSet& part, const Cut& local) {
  VertexSet side1;
  for (Vertex v : local.side1) side1.push_back(part[static_cast<std::size_t>(v)]);
  Cut c;
  c.side1 = make_set(side1);
  VertexSet side2;
  for (Vertex v : local.side2) side2.push_back(part[static_cast<std::size_t>(v)]);
  c.side2 = make_set(side2);
  c.crossing = edge_count_between(g, c.side1, c.side2);
  c.ratio = static_cast<double>(c.crossing) / (static_cast<double>(c.side1.size()) * static_cast<double>(c.side2.size()));
  return c;
}

// Lowest-ratio refuting cut over all parts; ties to the smaller part index.
ExpansionScan scan_expansion(const Graph& g, const std::vector<VertexSet>& parts, double threshold, const CutSearchOptions& opt) {
  ExpansionScan scan;
  scan.verdicts.resize(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    CutSearchOptions o = opt;
    o.seed = derive_seed(opt.seed, i);
    Graph sub = g.induced(parts[i]);
    scan.verdicts[i] = certify_expander(sub, threshold, o);
    const auto& v = scan.verdicts[i];
    if (v.kind == ExpansionVerdict::Kind::Unknown) scan.provisional = true;
    if (v.kind == ExpansionVerdict::Kind::CutFound) {
      if (!scan.refuted || v.cut->ratio < scan.cut->ratio) {
        scan.refuted = true;
        scan.index = static_cast<int>(i);
        scan.cut = lift_cut(g, parts[i], *v.cut);
      }
    }
  }
  return scan;
}

int min_degree_inside(const Graph& g, const VertexSet& part) { return part.empty() ? 0 : g.induced(part).min_degree(); }

}  // namespace

void check_partition(int n, const LabeledPartition& part) {
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
  auto mark = [&](const VertexSet& s) {
    for (Vertex v : s) {
      if (v < 0 || v >= n) throw Error(ErrorCode::Argument, "partition: vertex out of range");
      if (seen[static_cast<std::size_t>(v)]++) throw Error(ErrorCode::Argument, "partition: vertex " + std::to_string(v) + " appears twice");
    }
  };
  mark(part.v0);
  for (const auto& p : part.parts) mark(p);
  for (int v = 0; v < n; ++v) {
    if (!seen[static_cast<std::size_t>(v)]) throw Error(ErrorCode::Argument, "partition: vertex " + std::to_string(v) + " missing");
  }
  if (part.parts.empty()) throw Error(ErrorCode::Argument, "partition: at least one part required");
}

namespace {

std::pair<GoodnessReport, ExpansionScan> assess_with_scan(const Graph& g, const LabeledPartition& part, double c, double alpha, double gamma,
                                                          int n, double p, const CutSearchOptions& opt) {
  check_partition(g.n(), part);
  GoodnessReport rep;
  const int level = part.level();
  bool l1 = static_cast<double>(part.v0.size()) <= alpha * n + 1e-9;
  bool l2 = true;
  const double floor_deg = (c + alpha / std::pow(2.0, level)) * n * p;
  for (const auto& vi : part.parts) {
    if (min_degree_inside(g, vi) < floor_deg - 1e-9) l2 = false;
  }
  rep.good = l1 && l2;
  auto scan = scan_expansion(g, part.parts, gamma * p, opt);
  rep.provisional = scan.provisional;
  rep.perfect = rep.good && !scan.refuted;
  if (rep.good && scan.refuted) {
    rep.failing_part = scan.index;
    rep.failing_cut = scan.cut;
  }
  return {rep, std::move(scan)};
}

}  // namespace

GoodnessReport assess_partition(const Graph& g, const LabeledPartition& part, double c, double alpha, double gamma, int n, double p,
                                const CutSearchOptions& opt) {
  return assess_with_scan(g, part, c, alpha, gamma, n, p, opt).first;
}

Peel kernel_peel(const Graph& g, const VertexSet& x, const VertexSet& y, double threshold) {
  auto xmask = to_mask(g.n(), x);
  auto ymask = to_mask(g.n(), y);
  for (Vertex v : x) {
    if (ymask[static_cast<std::size_t>(v)]) throw Error(ErrorCode::Argument, "kernel_peel: X and Y must be disjoint");
  }
  std::vector<int> count(static_cast<std::size_t>(g.n()), 0);
  std::vector<std::uint8_t> in_w(static_cast<std::size_t>(g.n()), 0);
  std::deque<Vertex> queue;
  for (Vertex v : x) {
    count[static_cast<std::size_t>(v)] = degree_into(g, v, ymask);
    if (count[static_cast<std::size_t>(v)] >= threshold - 1e-9) {
      in_w[static_cast<std::size_t>(v)] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    Vertex w = queue.front();
    queue.pop_front();
    for (Vertex u : g.neighbors(w)) {
      const auto su = static_cast<std::size_t>(u);
      if (!xmask[su] || in_w[su]) continue;
      if (++count[su] >= threshold - 1e-9) {
        in_w[su] = 1;
        queue.push_back(u);
      }
    }
  }
  Peel out;
  for (Vertex v : make_set(x)) (in_w[static_cast<std::size_t>(v)] ? out.w : out.rest).push_back(v);
  return out;
}

LabeledPartition refine_once(const Graph& g, const LabeledPartition& part, int index, const Cut& cut, double threshold) {
  check_partition(g.n(), part);
  if (index < 0 || index >= part.level()) throw Error(ErrorCode::Argument, "refine_once: part index out of range");
  const VertexSet& vi = part.parts[static_cast<std::size_t>(index)];
  VertexSet sides = make_set([&] {
    VertexSet s = cut.side1;
    s.insert(s.end(), cut.side2.begin(), cut.side2.end());
    return s;
  }());
  if (sides != vi || cut.side1.empty() || cut.side2.empty() || cut.side1.size() + cut.side2.size() != vi.size()) {
    throw Error(ErrorCode::Argument, "refine_once: cut does not partition the selected part");
  }
  Peel px = kernel_peel(g, cut.side1, cut.side2, threshold);
  Peel py = kernel_peel(g, cut.side2, cut.side1, threshold);
  if (px.rest.empty() || py.rest.empty()) {
    throw Error(ErrorCode::DegenerateRefinement, "refine_once: a peeled side is empty");
  }
  LabeledPartition out;
  VertexSet v0 = part.v0;
  v0.insert(v0.end(), px.w.begin(), px.w.end());
  v0.insert(v0.end(), py.w.begin(), py.w.end());
  out.v0 = make_set(std::move(v0));
  for (int i = 0; i < part.level(); ++i) {
    if (i == index) {
      out.parts.push_back(px.rest);
      out.parts.push_back(py.rest);
    } else {
      out.parts.push_back(part.parts[static_cast<std::size_t>(i)]);
    }
  }
  return out;
}

LabeledPartition redistribute_v0(const Graph& g, const LabeledPartition& part, double c, int n, double p, double /*beta*/) {
  check_partition(g.n(), part);
  const int level = part.level();
  std::vector<int> label(static_cast<std::size_t>(g.n()), -1);
  for (int i = 0; i < level; ++i) {
    for (Vertex v : part.parts[static_cast<std::size_t>(i)]) label[static_cast<std::size_t>(v)] = i;
  }
  // Order V0 front to back by maximum degree out of the not-yet-ordered remainder.
  auto remaining = to_mask(g.n(), part.v0);
  std::vector<int> outside(static_cast<std::size_t>(g.n()), 0);
  for (Vertex v : part.v0) outside[static_cast<std::size_t>(v)] = g.degree(v) - degree_into(g, v, remaining);
  std::vector<Vertex> order;
  VertexSet pool = part.v0;
  while (!pool.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pool.size(); ++i) {
      if (outside[static_cast<std::size_t>(pool[i])] > outside[static_cast<std::size_t>(pool[best])]) best = i;
    }
    Vertex w = pool[best];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
    remaining[static_cast<std::size_t>(w)] = 0;
    order.push_back(w);
    for (Vertex u : g.neighbors(w)) {
      if (remaining[static_cast<std::size_t>(u)]) ++outside[static_cast<std::size_t>(u)];
    }
  }
  const double need = c * n * p / level;
  LabeledPartition out;
  out.parts = part.parts;
  std::vector<int> count(static_cast<std::size_t>(level));
  for (Vertex w : order) {
    std::fill(count.begin(), count.end(), 0);
    for (Vertex u : g.neighbors(w)) {
      int l = label[static_cast<std::size_t>(u)];
      if (l >= 0) ++count[static_cast<std::size_t>(l)];
    }
    int best = static_cast<int>(std::max_element(count.begin(), count.end()) - count.begin());
    if (count[static_cast<std::size_t>(best)] < need - 1e-9) {
      throw Error(ErrorCode::InfeasibleDegree, "redistribute_v0: vertex " + std::to_string(w) + " has too few neighbours in every part");
    }
    label[static_cast<std::size_t>(w)] = best;
    out.parts[static_cast<std::size_t>(best)].push_back(w);
  }
  for (auto& s : out.parts) s = make_set(std::move(s));
  return out;
}

PartitionResult partition_into_expanders(const Graph& g, const PartitionParams& prm) {
  const int n = g.n();
  if (n == 0) throw Error(ErrorCode::Argument, "partition_into_expanders: empty graph");
  if (!(prm.c > 0.0 && prm.c <= 1.0)) throw Error(ErrorCode::Argument, "partition_into_expanders: c must lie in (0, 1]");
  const double c1 = prm.c + prm.alpha - prm.xi;
  const double a1 = prm.peel_alpha >= 0.0 ? prm.peel_alpha : prm.c * prm.c * prm.xi / 4.0;
  const int cap = prm.level_cap > 0 ? prm.level_cap : static_cast<int>(std::ceil(1.0 / prm.c - 1e-12));
  const double p = prm.p;

  PartitionResult result;
  LabeledPartition part;
  part.parts.push_back(complement(n, {}));
  CutSearchOptions cut_opt = prm.cut;
  for (int round = 0;; ++round) {
    const int level = part.level();
    const double c_l = c1 + a1 / std::pow(2.0, level - 1);
    const double a_l = a1 * (1.0 - std::pow(2.0, -level));
    cut_opt.seed = derive_seed(prm.cut.seed, static_cast<std::uint64_t>(round));
    auto [rep, scan] = assess_with_scan(g, part, c_l, a_l, prm.gamma_target, n, p, cut_opt);
    result.verification.history.push_back(rep);
    if (!scan.refuted) break;
    if (level >= cap) {
      throw Error(ErrorCode::PartitionLimitExceeded, "partition_into_expanders: level cap " + std::to_string(cap) + " reached with a non-expanding part");
    }
    part = refine_once(g, part, scan.index, *scan.cut, a1 * n * p / std::pow(2.0, level));
  }
  if (part.level() * prm.c >= 1.0 - 1e-12 && part.level() > 1) {
    throw Error(ErrorCode::PartitionLimitExceeded, "partition_into_expanders: " + std::to_string(part.level()) + " parts is not below 1/c");
  }
  part = redistribute_v0(g, part, prm.c, n, p, prm.beta);
  result.parts = part.parts;

  auto& ver = result.verification;
  CutSearchOptions final_opt = prm.cut;
  final_opt.seed = derive_seed(prm.cut.seed, 0xF1A1);
  auto scan = scan_expansion(g, result.parts, prm.gamma_target * p, final_opt);
  ver.expansion = scan.verdicts;
  ver.expansion_ok = !scan.refuted;
  ver.provisional = scan.provisional;
  for (const auto& vi : result.parts) {
    Graph sub = g.induced(vi);
    ver.min_degree.push_back(sub.min_degree());
    ver.essential_min_degree.push_back(essential_min_degree(sub, prm.xi));
    if (sub.min_degree() < prm.c * prm.c * n * p - 1e-9) ver.min_degree_ok = false;
    if (ver.essential_min_degree.back() < (prm.c + prm.alpha - prm.xi) * n * p - 1e-9) ver.essential_ok = false;
  }
  return result;
}

}  // namespace cyclecover
