#include <omp.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cyclecover/absorber.hpp"
#include "cyclecover/connect.hpp"
#include "cyclecover/cover.hpp"
#include "cyclecover/errors.hpp"
#include "cyclecover/expander.hpp"
#include "cyclecover/experiment.hpp"
#include "cyclecover/partition.hpp"
#include "cyclecover/randgen.hpp"
#include "cyclecover/rng.hpp"
#include "cyclecover/sparseness.hpp"

using namespace cyclecover;
using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  int threads = 0;
  std::string output_dir;
};

double density(const Graph& g) {
  const double n = g.n();
  return n < 2 ? 0.0 : 2.0 * static_cast<double>(g.m()) / (n * (n - 1.0));
}

VertexSet read_vertex_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  VertexSet out;
  long long v;
  while (in >> v) out.push_back(static_cast<Vertex>(v));
  if (!in.eof()) throw Error(ErrorCode::Io, path + ": expected whitespace-separated vertex ids");
  return out;
}

/// Emits `j` on stdout and, with --output-dir, into <dir>/<name>.
void emit(const Globals& g, const std::string& name, const json& j) {
  std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!g.output_dir.empty()) {
    std::filesystem::create_directories(g.output_dir);
    std::ofstream out(std::filesystem::path(g.output_dir) / name);
    if (!out) throw Error(ErrorCode::Io, "cannot write into " + g.output_dir);
    out << text;
  }
}

json cut_json(const Cut& c) { return {{"side1", c.side1}, {"side2", c.side2}, {"crossing", c.crossing}, {"ratio", c.ratio}}; }

json verdict_json(const ExpansionVerdict& v) {
  json j{{"kind", to_string(v.kind)}, {"threshold", v.threshold}};
  if (v.kind == ExpansionVerdict::Kind::CertifiedExact) j["q_star"] = v.q_star;
  if (v.cut) j["cut"] = cut_json(*v.cut);
  return j;
}

/// Proper 2-colouring of g (isolated vertices on side 0); throws if g is not bipartite.
std::vector<std::uint8_t> two_colouring(const Graph& g) {
  std::vector<int> colour(static_cast<std::size_t>(g.n()), -1);
  for (Vertex s = 0; s < g.n(); ++s) {
    if (colour[static_cast<std::size_t>(s)] >= 0) continue;
    colour[static_cast<std::size_t>(s)] = 0;
    std::vector<Vertex> q{s};
    for (std::size_t h = 0; h < q.size(); ++h)
      for (Vertex x : g.neighbors(q[h])) {
        int want = 1 - colour[static_cast<std::size_t>(q[h])];
        if (colour[static_cast<std::size_t>(x)] < 0) {
          colour[static_cast<std::size_t>(x)] = want;
          q.push_back(x);
        } else if (colour[static_cast<std::size_t>(x)] != want) {
          throw Error(ErrorCode::Precondition, "graph is not bipartite");
        }
      }
  }
  return std::vector<std::uint8_t>(colour.begin(), colour.end());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cyclecover: sparse-graph expander partitioning, absorbers and cycle covers"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals glob;
  app.add_option("--seed", glob.seed, "Master seed");
  app.add_option("--threads", glob.threads, "OpenMP threads (0 = runtime default)");
  app.add_option("--output-dir", glob.output_dir, "Directory for output files");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a graph");
  std::string gen_kind = "gnp", gen_out, adv_name = "random";
  int gen_n = 100, gen_d = 3, gen_blocks = 2, adv_parts = 2;
  double gen_p = 0.1, adv_r = 0.0;
  gen->add_option("--generator", gen_kind, "gnp | planted | regular | double-cover")->check(CLI::IsMember({"gnp", "planted", "regular", "double-cover"}));
  gen->add_option("--n", gen_n, "Vertices (per side for double-cover)");
  gen->add_option("--p", gen_p, "Edge probability");
  gen->add_option("--d", gen_d, "Degree (regular)");
  gen->add_option("--blocks", gen_blocks, "Blocks (planted)");
  gen->add_option("--adversary", adv_name, "random | bipartite-split | clique-split | targeted");
  gen->add_option("--r", adv_r, "Adversary resilience fraction (0 = none)");
  gen->add_option("--parts", adv_parts, "Parts for the split adversaries");
  gen->add_option("--out", gen_out, "Edge-list file (default: <output-dir>/graph.txt or stdout)");

  // check-sparse
  auto* cs = app.add_subcommand("check-sparse", "Certify (p, beta)-sparseness");
  std::string graph_path;
  double cs_p = -1.0, cs_beta = -1.0;
  cs->add_option("--graph", graph_path, "Edge-list file")->required();
  cs->add_option("--p", cs_p, "p (default: edge density)");
  cs->add_option("--beta", cs_beta, "beta to test (default: spectral estimate)");

  // check-expander
  auto* ce = app.add_subcommand("check-expander", "Certify or refute q-expansion");
  double ce_q = -1.0, ce_gamma = 0.05;
  int ce_restarts = 2;
  ce->add_option("--graph", graph_path, "Edge-list file")->required();
  ce->add_option("--q", ce_q, "Threshold q (default: gamma * density)");
  ce->add_option("--gamma", ce_gamma, "gamma when q is not given");
  ce->add_option("--restarts", ce_restarts, "Cut-search restarts");

  // partition
  auto* pa = app.add_subcommand("partition", "Partition into expanders");
  PartitionParams pp;
  pa->add_option("--graph", graph_path, "Edge-list file")->required();
  pa->add_option("--c", pp.c, "c");
  pa->add_option("--alpha", pp.alpha, "alpha");
  pa->add_option("--xi", pp.xi, "xi");
  pa->add_option("--gamma", pp.gamma_target, "Target expansion as a fraction of p");
  pa->add_option("--p", pp.p, "p (default: edge density)");

  // connect
  auto* co = app.add_subcommand("connect", "Route a demand multigraph through W");
  std::string demand_path, w_path;
  int co_len = 10, co_budget = 8;
  co->add_option("--graph", graph_path, "Edge-list file")->required();
  co->add_option("--demands", demand_path, "Lines 'u v multiplicity'")->required();
  co->add_option("--w", w_path, "Vertex list for W (default: all non-terminals)");
  co->add_option("--max-len", co_len, "Maximum path length");
  co->add_option("--budget", co_budget, "Full restarts");

  // build-absorber
  auto* ba = app.add_subcommand("build-absorber", "Build and verify an absorber in a bipartite graph");
  std::string u_path;
  int ba_u = 8, ba_trials = 200;
  double ba_w = 1.0;
  AbsorberParams bap;
  ba->add_option("--graph", graph_path, "Bipartite edge-list file")->required();
  ba->add_option("--u", u_path, "Vertex list for U (default: random)");
  ba->add_option("--u-size", ba_u, "|U| when drawn at random");
  ba->add_option("--w-fraction", ba_w, "Share of the remaining vertices put in W");
  ba->add_option("--r", bap.r, "Template matchings");
  ba->add_option("--max-len", bap.max_len, "Maximum connector length");
  ba->add_option("--trials", ba_trials, "Random balanced requests to verify");
  bool ba_balanced = false;
  std::vector<double> ba_split;
  ba->add_flag("--balanced-u", ba_balanced, "Draw U with equal numbers on both sides");
  ba->add_option("--split", ba_split, "Shares of W for phases 1, 2, 3")->expected(3);

  // cover
  auto* cv = app.add_subcommand("cover", "Cover a graph by at most k-1 cycles");
  std::string config_path;
  int cv_k = 2;
  cv->add_option("--graph", graph_path, "Edge-list file")->required();
  cv->add_option("--k", cv_k, "k (at most k-1 cycles)");
  cv->add_option("--config", config_path, "Pipeline JSON config");

  // resilience-experiment
  auto* rx = app.add_subcommand("resilience-experiment", "Run an experiment spec");
  std::string spec_path;
  rx->add_option("--spec", spec_path, "Experiment spec JSON")->required();

  // replay
  auto* rp = app.add_subcommand("replay", "Re-run a spec and compare with a stored report");
  std::string compare_path;
  rp->add_option("--spec", spec_path, "Spec JSON, or an experiment directory containing spec.json")->required();
  rp->add_option("--compare", compare_path, "Report to compare byte-for-byte (default: report.json next to the spec)");

  CLI11_PARSE(app, argc, argv);
  if (glob.threads > 0) omp_set_num_threads(glob.threads);

  try {
    if (*gen) {
      Graph g;
      std::vector<std::uint8_t> side;
      if (gen_kind == "gnp") {
        g = gnp(gen_n, gen_p, derive_seed(glob.seed, 1));
      } else if (gen_kind == "planted") {
        g = planted_blocks(gen_blocks, gen_n, gen_p, derive_seed(glob.seed, 1)).graph;
      } else if (gen_kind == "regular") {
        g = random_regular(gen_n, gen_d, derive_seed(glob.seed, 1));
      } else {
        g = bipartite_double_cover(gnp(gen_n, gen_p, derive_seed(glob.seed, 1))).graph;
      }
      if (adv_r > 0.0) g = apply_adversary(g, Adversary{parse_adversary_strategy(adv_name), adv_r, adv_parts}, derive_seed(glob.seed, 2));
      if (gen_out.empty() && !glob.output_dir.empty()) {
        std::filesystem::create_directories(glob.output_dir);
        gen_out = (std::filesystem::path(glob.output_dir) / "graph.txt").string();
      }
      if (gen_out.empty()) {
        write_edge_list(std::cout, g);
      } else {
        save_edge_list(gen_out, g);
        std::cerr << "wrote " << gen_out << " (n = " << g.n() << ", m = " << g.m() << ")\n";
      }
      return 0;
    }

    Graph g;
    if (!graph_path.empty()) g = load_edge_list(graph_path);

    if (*cs) {
      const double p = cs_p >= 0.0 ? cs_p : density(g);
      json out{{"n", g.n()}, {"m", g.m()}, {"p", p}};
      SpectralOptions so;
      so.seed = glob.seed;
      SpectralResult sr = spectral_beta(g, p, so);
      out["spectral"] = {{"beta", sr.beta}, {"iterations", sr.iterations}, {"converged", sr.converged}, {"achieved_tol", sr.achieved_tol}};
      const double beta = cs_beta >= 0.0 ? cs_beta : sr.beta;
      out["beta"] = beta;
      if (g.n() <= 20) {
        SparsenessCertificate cert = check_sparse_exact(g, p, beta);
        out["method"] = to_string(cert.method);
        out["sparse"] = !cert.witness.has_value();
        if (cert.witness) out["witness"] = {{"x", cert.witness->x}, {"y", cert.witness->y}, {"edges", cert.witness->edges}, {"excess", cert.witness->excess}};
      } else if (cs_beta >= 0.0 && cs_beta < sr.beta) {
        ViolationSearchOptions vo;
        vo.seed = glob.seed;
        auto w = violation_search(g, p, beta, vo);
        out["method"] = "heuristic";
        out["sparse"] = w ? json(false) : json(nullptr);
        if (w) out["witness"] = {{"x", w->x}, {"y", w->y}, {"edges", w->edges}, {"excess", w->excess}};
      } else {
        out["method"] = "spectral";
        out["sparse"] = sr.converged;
      }
      emit(glob, "check-sparse.json", out);
    } else if (*ce) {
      const double q = ce_q > 0.0 ? ce_q : ce_gamma * density(g);
      CutSearchOptions opt;
      opt.seed = glob.seed;
      opt.restarts = ce_restarts;
      emit(glob, "check-expander.json", verdict_json(certify_expander(g, q, opt)));
    } else if (*pa) {
      if (pp.p <= 0.0) pp.p = density(g);
      pp.cut.seed = glob.seed;
      PartitionResult r = partition_into_expanders(g, pp);
      json parts = json::array();
      for (std::size_t i = 0; i < r.parts.size(); ++i) {
        parts.push_back({{"vertices", r.parts[i]},
                         {"min_degree", r.verification.min_degree[i]},
                         {"essential_min_degree", r.verification.essential_min_degree[i]},
                         {"expansion", verdict_json(r.verification.expansion[i])}});
      }
      emit(glob, "partition.json",
           {{"parts", parts},
            {"expansion_ok", r.verification.expansion_ok},
            {"provisional", r.verification.provisional},
            {"min_degree_ok", r.verification.min_degree_ok},
            {"essential_ok", r.verification.essential_ok},
            {"rounds", r.verification.history.size()}});
    } else if (*co) {
      ConnectionDemand d;
      std::ifstream in(demand_path);
      if (!in) throw Error(ErrorCode::Io, "cannot open " + demand_path);
      std::string line;
      while (std::getline(in, line)) {
        std::istringstream ls(line);
        int u, v, mult = 1;
        if (!(ls >> u)) continue;
        if (!(ls >> v)) throw Error(ErrorCode::Io, "demand line needs 'u v [multiplicity]'");
        ls >> mult;
        d.add(u, v, mult);
      }
      VertexSet w = w_path.empty() ? complement(g.n(), d.terminals()) : make_set(read_vertex_list(w_path));
      ConnectOptions opt;
      opt.max_len = co_len;
      opt.budget = co_budget;
      opt.seed = glob.seed;
      PathSystem ps = connect_all(g, d, w, opt);
      emit(glob, "connect.json", {{"routes", ps.routes}, {"used_internal", ps.used_internal.size()}, {"check", check_path_system(g, d, w, co_len, ps).empty() ? "pass" : "fail"}});
    } else if (*ba) {
      std::vector<std::uint8_t> side = two_colouring(g);
      Rng rng(glob.seed);
      VertexSet u;
      if (!u_path.empty()) {
        u = make_set(read_vertex_list(u_path));
      } else if (ba_balanced) {
        VertexSet order = complement(g.n(), {});
        rng.derive(1).shuffle(order);
        int want[2] = {(ba_u + 1) / 2, ba_u / 2};
        for (Vertex v : order)
          if (want[side[static_cast<std::size_t>(v)]] > 0) {
            --want[side[static_cast<std::size_t>(v)]];
            u.push_back(v);
          }
        u = make_set(u);
      } else {
        for (int v : rng.derive(1).sample(g.n(), std::min(ba_u, g.n()))) u.push_back(v);
        u = make_set(u);
      }
      if (!ba_split.empty()) bap.split = {ba_split[0], ba_split[1], ba_split[2]};
      VertexSet rest = complement(g.n(), u);
      rng.derive(2).shuffle(rest);
      rest.resize(static_cast<std::size_t>(ba_w * static_cast<double>(rest.size())));
      VertexSet w = make_set(rest);
      bap.seed = rng.derive(3).key();
      AbsorberStructure abs = build_absorber(g, u, w, side, bap);
      AbsorberReport rep = verify_absorber(g, abs, ba_trials, rng.derive(4).key());
      json gadgets = json::array();
      for (const auto& gd : abs.gadgets)
        gadgets.push_back({{"x", gd.tx}, {"y", gd.ty}, {"P", gd.path_p}, {"Q", gd.path_q}, {"rungs", gd.rungs}, {"u", gd.u}, {"v", gd.v}});
      json out{{"a", abs.a},
               {"b", abs.b},
               {"f_a", abs.f_a},
               {"f_b", abs.f_b},
               {"u_in_a", abs.u_in_a},
               {"u_in_b", abs.u_in_b},
               {"template", {{"n", abs.tpl.size_n}, {"r", abs.tpl.matchings_used}, {"edges", abs.tpl.edges}}},
               {"gadgets", gadgets},
               {"chain", abs.chain},
               {"vertices", abs.vertices.size()},
               {"verification", {{"total", rep.total}, {"passed", rep.passed}, {"counterexample", rep.counterexample}}}};
      emit(glob, "absorber.json", out);
      if (rep.passed != rep.total) return 3;
    } else if (*cv) {
      PipelineConfig cfg;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw Error(ErrorCode::Io, "cannot open " + config_path);
        json j;
        try {
          j = json::parse(in);
        } catch (const json::exception& e) {
          throw Error(ErrorCode::Schema, std::string("config is not valid JSON: ") + e.what());
        }
        pipeline_from_json(j, cfg);
      }
      cfg.seed = glob.seed;
      CoverStats st;
      auto t0 = std::chrono::steady_clock::now();
      CycleCover cover = cover_graph(g, cv_k, cfg, &st);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      CoverReport vr = validate_cycle_cover(g, cover);
      if (!vr.pass) throw Error(ErrorCode::InternalValidation, vr.violation, "validate");
      emit(glob, "cover.json",
           {{"cycles", cover.cycles},
            {"stats",
             {{"route", st.route},
              {"attempts", st.attempts},
              {"parts", st.parts},
              {"part_k", st.part_k},
              {"absorber_vertices", st.absorber_vertices},
              {"direct_junctions", st.direct_junctions},
              {"absorbed_u", st.absorbed_u},
              {"retry_reasons", st.retry_reasons}}},
            {"stage_timings", {{"total_seconds", secs}}},
            {"validation", "pass"},
            {"hash", cover_hash(cover)}});
    } else if (*rx) {
      ExperimentSpec spec = load_spec(spec_path);
      RunReport rep = run_experiment(spec);
      std::string dir = glob.output_dir.empty() ? "experiment" : glob.output_dir;
      write_experiment(dir, spec, rep);
      int ok = 0, internal = 0;
      for (const auto& t : rep.trials) {
        ok += t.success ? 1 : 0;
        internal += t.error == "internal-validation" || t.error == "internal" ? 1 : 0;
      }
      std::cerr << "trials: " << rep.trials.size() << ", successes: " << ok << ", report: " << dir << "/report.json\n";
      return internal > 0 ? 3 : 0;
    } else if (*rp) {
      std::filesystem::path sp(spec_path);
      if (std::filesystem::is_directory(sp)) sp /= "spec.json";
      if (compare_path.empty()) compare_path = (sp.parent_path() / "report.json").string();
      ExperimentSpec spec = load_spec(sp.string());
      RunReport rep = run_experiment(spec);
      std::string text = report_text(spec, rep);
      if (!glob.output_dir.empty()) write_experiment(glob.output_dir, spec, rep);
      std::ifstream in(compare_path, std::ios::binary);
      if (!in) throw Error(ErrorCode::Io, "cannot open " + compare_path);
      std::stringstream buf;
      buf << in.rdbuf();
      bool same = buf.str() == text;
      std::cout << (same ? "identical" : "different") << "\n";
      return same ? 0 : 3;
    }
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << (e.stage().empty() ? "" : " @ " + e.stage()) << "]: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::Argument:
      case ErrorCode::Schema:
      case ErrorCode::Io:
      case ErrorCode::SizeLimit:
      case ErrorCode::Precondition:
        return 2;
      case ErrorCode::InternalValidation:
        return 3;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
