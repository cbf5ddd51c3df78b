#include "cyclecover/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cyclecover/errors.hpp"
#include "cyclecover/rng.hpp"

namespace cyclecover {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const char* where) {
  if (!j.is_object()) throw Error(ErrorCode::Schema, std::string(where) + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw Error(ErrorCode::Schema, std::string(where) + ": unknown key '" + it.key() + "'");
}

template <class T>
void read(const json& j, const char* key, T& out, const char* where) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  bool ok = false;
  if constexpr (std::is_same_v<T, bool>) {
    ok = v.is_boolean();
  } else if constexpr (std::is_same_v<T, std::string>) {
    ok = v.is_string();
  } else if constexpr (std::is_floating_point_v<T>) {
    ok = v.is_number();
  } else if constexpr (std::is_unsigned_v<T>) {
    ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
  } else {
    ok = v.is_number_integer();
  }
  if (!ok) throw Error(ErrorCode::Schema, std::string(where) + ": key '" + key + "' has the wrong type");
  out = v.get<T>();
}

void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::Schema, what);
}

std::string rule_name(ExtensionRule r) { return r == ExtensionRule::FewestFree ? "fewest-free" : "most-free"; }

ExtensionRule parse_rule(const std::string& s) {
  if (s == "fewest-free") return ExtensionRule::FewestFree;
  if (s == "most-free") return ExtensionRule::MostFree;
  throw Error(ErrorCode::Schema, "pipeline: unknown extension rule '" + s + "'");
}

constexpr const char* kSpecSchema = "cyclecover-experiment/1";
constexpr const char* kReportSchema = "cyclecover-report/1";

}  // namespace

nlohmann::json pipeline_to_json(const PipelineConfig& c) {
  return json{{"p", c.p},
              {"retries", c.retries},
              {"small_n", c.small_n},
              {"use_partition", c.use_partition},
              {"c", c.c},
              {"alpha", c.alpha},
              {"xi", c.xi},
              {"gamma_target", c.gamma_target},
              {"cut_restarts", c.cut.restarts},
              {"u_size", c.u_size},
              {"w_fraction", c.w_fraction},
              {"w_split", {c.w_split[0], c.w_split[1], c.w_split[2]}},
              {"template_r", c.template_r},
              {"connect_max_len", c.connect_max_len},
              {"connect_budget", c.connect_budget},
              {"rotation_budget", c.rotation_budget},
              {"steering_budget", c.steering_budget},
              {"rule", rule_name(c.rule)},
              {"inheritance_checks", c.inheritance_checks},
              {"gamma1", c.gamma1}};
}

void pipeline_from_json(const nlohmann::json& j, PipelineConfig& c) {
  const char* w = "pipeline";
  check_keys(j, {"p", "retries", "small_n", "use_partition", "c", "alpha", "xi", "gamma_target", "cut_restarts", "u_size", "w_fraction", "w_split",
                 "template_r", "connect_max_len", "connect_budget", "rotation_budget", "steering_budget", "rule", "inheritance_checks", "gamma1"},
             w);
  read(j, "p", c.p, w);
  read(j, "retries", c.retries, w);
  read(j, "small_n", c.small_n, w);
  read(j, "use_partition", c.use_partition, w);
  read(j, "c", c.c, w);
  read(j, "alpha", c.alpha, w);
  read(j, "xi", c.xi, w);
  read(j, "gamma_target", c.gamma_target, w);
  read(j, "cut_restarts", c.cut.restarts, w);
  read(j, "u_size", c.u_size, w);
  read(j, "w_fraction", c.w_fraction, w);
  if (j.contains("w_split")) {
    const json& s = j.at("w_split");
    require(s.is_array() && s.size() == 3, "pipeline: w_split must be an array of 3 numbers");
    for (std::size_t i = 0; i < 3; ++i) {
      require(s[i].is_number() && s[i].get<double>() > 0.0, "pipeline: w_split entries must be positive");
      c.w_split[i] = s[i].get<double>();
    }
  }
  read(j, "template_r", c.template_r, w);
  read(j, "connect_max_len", c.connect_max_len, w);
  read(j, "connect_budget", c.connect_budget, w);
  read(j, "rotation_budget", c.rotation_budget, w);
  read(j, "steering_budget", c.steering_budget, w);
  std::string rule = rule_name(c.rule);
  read(j, "rule", rule, w);
  c.rule = parse_rule(rule);
  read(j, "inheritance_checks", c.inheritance_checks, w);
  read(j, "gamma1", c.gamma1, w);
  require(c.retries >= 1 && c.u_size >= 2 && c.template_r >= 1 && c.connect_max_len >= 1 && c.connect_budget >= 1, "pipeline: counts out of range");
  require(c.w_fraction > 0.0 && c.w_fraction < 1.0, "pipeline: w_fraction must lie in (0, 1)");
  require(c.c > 0.0 && c.c <= 1.0 && c.alpha >= 0.0 && c.xi >= 0.0 && c.gamma_target > 0.0, "pipeline: partition parameters out of range");
}

ExperimentSpec parse_spec(const nlohmann::json& j) {
  check_keys(j, {"schema", "instance", "adversary", "k", "trials", "seed", "pipeline", "sweep", "save_artifacts"}, "spec");
  require(j.contains("schema") && j.at("schema") == kSpecSchema, std::string("spec: schema must be \"") + kSpecSchema + "\"");
  require(j.contains("instance"), "spec: missing 'instance'");
  ExperimentSpec s;
  const json& in = j.at("instance");
  check_keys(in, {"generator", "n", "p", "d", "blocks"}, "instance");
  read(in, "generator", s.instance.generator, "instance");
  read(in, "n", s.instance.n, "instance");
  read(in, "p", s.instance.p, "instance");
  read(in, "d", s.instance.d, "instance");
  read(in, "blocks", s.instance.blocks, "instance");
  require(s.instance.generator == "gnp" || s.instance.generator == "planted" || s.instance.generator == "regular",
          "instance: generator must be gnp, planted or regular");
  require(s.instance.n >= 1 && s.instance.p >= 0.0 && s.instance.p <= 1.0 && s.instance.blocks >= 1 && s.instance.d >= 0,
          "instance: parameters out of range");

  if (j.contains("adversary")) {
    const json& a = j.at("adversary");
    check_keys(a, {"strategy", "r", "parts", "keep_fraction"}, "adversary");
    std::string name = to_string(s.adversary.strategy);
    read(a, "strategy", name, "adversary");
    try {
      s.adversary.strategy = parse_adversary_strategy(name);
    } catch (const Error&) {
      throw Error(ErrorCode::Schema, "adversary: unknown strategy '" + name + "'");
    }
    read(a, "r", s.adversary.r, "adversary");
    read(a, "parts", s.adversary.parts, "adversary");
    read(a, "keep_fraction", s.adversary.keep_fraction, "adversary");
    require(s.adversary.r >= 0.0 && s.adversary.r < 1.0 && s.adversary.parts >= 2 && s.adversary.keep_fraction >= 0.0,
            "adversary: parameters out of range");
  }
  read(j, "k", s.k, "spec");
  read(j, "trials", s.trials, "spec");
  read(j, "seed", s.seed, "spec");
  read(j, "save_artifacts", s.save_artifacts, "spec");
  require(s.k >= 2 && s.trials >= 0, "spec: need k >= 2 and trials >= 0");
  if (j.contains("pipeline")) pipeline_from_json(j.at("pipeline"), s.pipeline);
  if (j.contains("sweep")) {
    const json& w = j.at("sweep");
    check_keys(w, {"r_lo", "r_hi", "steps", "trials"}, "sweep");
    SweepSpec sw;
    read(w, "r_lo", sw.r_lo, "sweep");
    read(w, "r_hi", sw.r_hi, "sweep");
    read(w, "steps", sw.steps, "sweep");
    read(w, "trials", sw.trials, "sweep");
    require(sw.r_lo >= 0.0 && sw.r_lo < sw.r_hi && sw.r_hi < 1.0 && sw.steps >= 0 && sw.trials >= 1, "sweep: parameters out of range");
    s.sweep = sw;
  }
  return s;
}

nlohmann::json spec_to_json(const ExperimentSpec& s) {
  json j{{"schema", kSpecSchema},
         {"instance", {{"generator", s.instance.generator}, {"n", s.instance.n}, {"p", s.instance.p}, {"d", s.instance.d}, {"blocks", s.instance.blocks}}},
         {"adversary",
          {{"strategy", to_string(s.adversary.strategy)}, {"r", s.adversary.r}, {"parts", s.adversary.parts}, {"keep_fraction", s.adversary.keep_fraction}}},
         {"k", s.k},
         {"trials", s.trials},
         {"seed", s.seed},
         {"pipeline", pipeline_to_json(s.pipeline)},
         {"save_artifacts", s.save_artifacts}};
  if (s.sweep) j["sweep"] = {{"r_lo", s.sweep->r_lo}, {"r_hi", s.sweep->r_hi}, {"steps", s.sweep->steps}, {"trials", s.sweep->trials}};
  return j;
}

ExperimentSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open spec file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Schema, std::string("spec is not valid JSON: ") + e.what());
  }
  return parse_spec(j);
}

std::string cover_hash(const CycleCover& cover) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](std::int64_t x) {
    auto u = static_cast<std::uint32_t>(x);
    for (int b = 0; b < 4; ++b) {
      h ^= (u >> (8 * b)) & 0xFFU;
      h *= 0x100000001b3ULL;
    }
  };
  feed(cover.k);
  feed(static_cast<std::int64_t>(cover.cycles.size()));
  for (const auto& c : cover.cycles) {
    feed(static_cast<std::int64_t>(c.size()));
    for (Vertex v : c) feed(v);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::pair<Graph, double> make_instance(const ExperimentSpec& spec, int trial, double r) {
  const std::uint64_t ts = derive_seed(spec.seed, static_cast<std::uint64_t>(trial));
  const InstanceSpec& in = spec.instance;
  Graph g;
  if (in.generator == "gnp") {
    g = gnp(in.n, in.p, derive_seed(ts, 1));
  } else if (in.generator == "planted") {
    g = planted_blocks(in.blocks, in.n, in.p, derive_seed(ts, 1)).graph;
  } else {
    g = random_regular(in.n, in.d, derive_seed(ts, 1));
  }
  double applied = r;
  if (spec.adversary.keep_fraction > 0.0 && g.n() > 0 && g.min_degree() > 0) {
    const double np = in.generator == "regular" ? static_cast<double>(in.d) : in.n * in.p;
    applied = std::clamp(1.0 - spec.adversary.keep_fraction * np / g.min_degree(), 0.0, 0.999);
  }
  if (applied > 0.0) {
    Adversary adv{spec.adversary.strategy, applied, spec.adversary.parts};
    g = apply_adversary(g, adv, derive_seed(ts, 2));
  }
  return {std::move(g), applied};
}

TrialOutcome run_trial(const ExperimentSpec& spec, int trial, double r) {
  TrialOutcome t;
  t.trial = trial;
  t.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(trial));
  auto start = std::chrono::steady_clock::now();
  try {
    auto [g, applied] = make_instance(spec, trial, r);
    t.r = applied;
    t.n = g.n();
    t.m = g.m();
    t.min_degree = g.n() > 0 ? g.min_degree() : 0;
    PipelineConfig cfg = spec.pipeline;
    cfg.seed = derive_seed(t.seed, 3);
    CoverStats stats;
    t.cover = cover_graph(g, spec.k, cfg, &stats);
    CoverReport rep = validate_cycle_cover(g, t.cover);
    if (!rep.pass) throw Error(ErrorCode::InternalValidation, "report: cover failed validation: " + rep.violation, "validate");
    t.success = true;
    for (const auto& c : t.cover.cycles) t.cycle_lengths.push_back(static_cast<int>(c.size()));
    t.cover_hash = cover_hash(t.cover);
    t.route = stats.route;
    t.attempts = stats.attempts;
    if (spec.save_artifacts) t.graph = std::move(g);
  } catch (const Error& e) {
    t.success = false;
    t.stage = e.stage().empty() ? "unknown" : e.stage();
    t.error = std::string(to_string(e.code()));
    t.message = e.what();
    if (t.r == 0.0) t.r = r;
  } catch (const std::exception& e) {
    t.success = false;
    t.stage = "unknown";
    t.error = "internal";
    t.message = e.what();
  }
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return t;
}

namespace {

std::vector<TrialOutcome> run_batch(const ExperimentSpec& spec, int trials, double r) {
  std::vector<TrialOutcome> out(static_cast<std::size_t>(std::max(0, trials)));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < trials; ++i) out[static_cast<std::size_t>(i)] = run_trial(spec, i, r);
  return out;
}

SweepRow summarize(double r, const std::vector<TrialOutcome>& ts) {
  SweepRow row;
  row.r = r;
  row.trials = static_cast<int>(ts.size());
  for (const auto& t : ts) row.successes += t.success ? 1 : 0;
  return row;
}

double rate(const SweepRow& row) { return row.trials == 0 ? 0.0 : static_cast<double>(row.successes) / row.trials; }

}  // namespace

RunReport run_experiment(const ExperimentSpec& spec) {
  RunReport rep;
  rep.trials = run_batch(spec, spec.trials, spec.adversary.r);
  int ok = 0;
  for (const auto& t : rep.trials) ok += t.success ? 1 : 0;
  rep.success_rate = spec.trials > 0 ? static_cast<double>(ok) / spec.trials : 0.0;

  if (spec.sweep) {
    ExperimentSpec sw = spec;
    sw.adversary.keep_fraction = 0.0;
    double lo = spec.sweep->r_lo, hi = spec.sweep->r_hi;
    SweepRow rlo = summarize(lo, run_batch(sw, spec.sweep->trials, lo));
    SweepRow rhi = summarize(hi, run_batch(sw, spec.sweep->trials, hi));
    rep.sweep = {rlo, rhi};
    if (rate(rlo) >= 0.5 && rate(rhi) < 0.5) {
      for (int s = 0; s < spec.sweep->steps; ++s) {
        double mid = 0.5 * (lo + hi);
        SweepRow row = summarize(mid, run_batch(sw, spec.sweep->trials, mid));
        rep.sweep.push_back(row);
        (rate(row) >= 0.5 ? lo : hi) = mid;
      }
      rep.bracket = std::make_pair(lo, hi);
    }
  }
  return rep;
}

nlohmann::json report_to_json(const ExperimentSpec& spec, const RunReport& report) {
  json trials = json::array();
  int ok = 0;
  for (const auto& t : report.trials) {
    json row{{"trial", t.trial}, {"seed", t.seed}, {"r", t.r}, {"success", t.success}, {"n", t.n}, {"m", t.m}, {"min_degree", t.min_degree}};
    if (t.success) {
      ++ok;
      row["cycles"] = t.cycle_lengths.size();
      row["cycle_lengths"] = t.cycle_lengths;
      row["cover_hash"] = t.cover_hash;
      row["route"] = t.route;
      row["attempts"] = t.attempts;
      row["validation"] = "pass";
    } else {
      row["stage"] = t.stage;
      row["error"] = t.error;
      row["message"] = t.message;
    }
    trials.push_back(std::move(row));
  }
  json sweep = json::array();
  for (const auto& s : report.sweep) sweep.push_back({{"r", s.r}, {"successes", s.successes}, {"trials", s.trials}});
  json j{{"schema", kReportSchema},
         {"spec", spec_to_json(spec)},
         {"trials", trials},
         {"successes", ok},
         {"success_rate", report.success_rate},
         {"sweep", sweep}};
  j["bracket"] = report.bracket ? json::array({report.bracket->first, report.bracket->second}) : json(nullptr);
  return j;
}

std::string report_text(const ExperimentSpec& spec, const RunReport& report) { return report_to_json(spec, report).dump(2) + "\n"; }

nlohmann::json timings_to_json(const RunReport& report) {
  json t = json::array();
  for (const auto& tr : report.trials) t.push_back({{"trial", tr.trial}, {"seconds", tr.seconds}});
  return json{{"trials", t}};
}

std::string sweep_csv(const RunReport& report) {
  std::ostringstream out;
  out << "r,successes,trials,rate\n";
  for (const auto& s : report.sweep) out << s.r << ',' << s.successes << ',' << s.trials << ',' << rate(s) << '\n';
  return out.str();
}

void write_experiment(const std::string& dir, const ExperimentSpec& spec, const RunReport& report) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create directory " + dir + ": " + ec.message());
  auto write = [&](const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + p.string());
    out << text;
  };
  write(fs::path(dir) / "spec.json", spec_to_json(spec).dump(2) + "\n");
  write(fs::path(dir) / "report.json", report_text(spec, report));
  write(fs::path(dir) / "timings.json", timings_to_json(report).dump(2) + "\n");
  if (!report.sweep.empty()) write(fs::path(dir) / "sweep.csv", sweep_csv(report));
  if (spec.save_artifacts) {
    fs::create_directories(fs::path(dir) / "graphs");
    fs::create_directories(fs::path(dir) / "covers");
    for (const auto& t : report.trials) {
      if (!t.success) continue;
      std::string name = "trial_" + std::to_string(t.trial);
      save_edge_list((fs::path(dir) / "graphs" / (name + ".txt")).string(), t.graph);
      write(fs::path(dir) / "covers" / (name + ".json"), json{{"k", t.cover.k}, {"cycles", t.cover.cycles}, {"hash", t.cover_hash}}.dump() + "\n");
    }
  }
}

}  // namespace cyclecover
