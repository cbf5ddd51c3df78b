#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cyclecover/cover.hpp"
#include "cyclecover/randgen.hpp"

namespace cyclecover {

struct InstanceSpec {
  std::string generator = "gnp";  // gnp | planted | regular
  int n = 200;
  double p = 0.1;
  int d = 0;       // regular only
  int blocks = 1;  // planted only
};

struct AdversarySpec {
  AdversaryStrategy strategy = AdversaryStrategy::RandomDeletion;
  double r = 0.0;
  int parts = 2;
  /// When positive, r is set per instance to 1 - keep_fraction * n p / delta(G), so the
  /// surviving minimum degree exceeds keep_fraction * n p.
  double keep_fraction = 0.0;
};

struct SweepSpec {
  double r_lo = 0.0;
  double r_hi = 0.5;
  int steps = 4;
  int trials = 4;
};

struct ExperimentSpec {
  InstanceSpec instance;
  AdversarySpec adversary;
  int k = 2;
  int trials = 1;
  std::uint64_t seed = 1;
  PipelineConfig pipeline;
  std::optional<SweepSpec> sweep;
  bool save_artifacts = false;
};

/// Throws Error(Schema) on unknown keys, wrong types or out-of-range values.
ExperimentSpec parse_spec(const nlohmann::json& j);
nlohmann::json spec_to_json(const ExperimentSpec& spec);
ExperimentSpec load_spec(const std::string& path);

nlohmann::json pipeline_to_json(const PipelineConfig& cfg);
/// Overrides the fields present in `j`; throws Error(Schema) on unknown keys.
void pipeline_from_json(const nlohmann::json& j, PipelineConfig& cfg);

struct TrialOutcome {
  int trial = 0;
  double r = 0.0;
  std::uint64_t seed = 0;
  bool success = false;
  std::string stage;
  std::string error;
  std::string message;
  int n = 0;
  std::int64_t m = 0;
  int min_degree = 0;
  std::vector<int> cycle_lengths;
  std::string cover_hash;
  std::string route;
  int attempts = 0;
  double seconds = 0.0;  // not part of the report
  CycleCover cover;      // not part of the report
  Graph graph;           // kept only when artifacts are saved
};

struct SweepRow {
  double r = 0.0;
  int successes = 0;
  int trials = 0;
};

struct RunReport {
  std::vector<TrialOutcome> trials;
  double success_rate = 0.0;
  std::vector<SweepRow> sweep;
  std::optional<std::pair<double, double>> bracket;
};

/// FNV-1a 64 over the cycle list, as 16 hex digits.
std::string cover_hash(const CycleCover& cover);

/// Graph for one trial after the adversary, and the r actually applied.
std::pair<Graph, double> make_instance(const ExperimentSpec& spec, int trial, double r);

/// One trial at resilience r; never throws library errors (they become failures).
TrialOutcome run_trial(const ExperimentSpec& spec, int trial, double r);

/// Runs `trials` trials at the spec's r (in parallel, deterministic), then the sweep if present.
RunReport run_experiment(const ExperimentSpec& spec);

/// Report without timings; keys sorted, so the text is reproducible.
nlohmann::json report_to_json(const ExperimentSpec& spec, const RunReport& report);
std::string report_text(const ExperimentSpec& spec, const RunReport& report);
nlohmann::json timings_to_json(const RunReport& report);
std::string sweep_csv(const RunReport& report);

/// Writes spec.json, report.json, timings.json, sweep.csv (if any) and, when requested,
/// graphs/ and covers/ into `dir`.
void write_experiment(const std::string& dir, const ExperimentSpec& spec, const RunReport& report);

}  // namespace cyclecover
