#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ofa/adversary.hpp"
#include "ofa/algorithms.hpp"
#include "ofa/bmcf.hpp"
#include "ofa/engine.hpp"
#include "ofa/metrics.hpp"

namespace ofa {

inline constexpr int kConfigSchemaVersion = 1;

// Seeds the random facility placement of an experiment from its base seed.
inline constexpr std::uint64_t kInstanceStream = 2;

struct PolicySpec {
  std::string label;
  std::variant<OnlinePolicy, BatchConfig> policy;

  bool is_batch() const { return std::holds_alternative<BatchConfig>(policy); }
};

// {"policy": "greedy" | "rgreedy" | "rgreedy_hyst" | "csvoronoi" | "bmcf", ...}
// with keys alpha, smoothing, slack, B, tau, rho_reserve, lambda, theta_c and
// an optional label.
PolicySpec parse_policy_spec(const nlohmann::json& doc);

struct UniformParams {
  std::size_t n = 0;
};

struct ClusteredParams {
  std::size_t n = 0;
  int centers = 1;
  double sigma = 1.0;
  int burst_len = 1;
};

// Replays a fixed, user-supplied sequence in every trial.
struct FixedSequence {
  RequestSequence sequence;
};

using WorkloadParams = std::variant<UniformParams, ClusteredParams, ZoneCollapseParams, OscillationTrapParams,
                                    BatchBoundaryTrapParams, FixedSequence>;

struct WorkloadSpec {
  std::string label;
  WorkloadParams params;
};

// Generates one trial. Benign and fixed workloads need a base instance;
// adversarial templates build their own.
GeneratedWorkload generate_workload(const WorkloadSpec& spec, const std::optional<GridInstance>& instance,
                                    RngSeed seed);

struct ExperimentConfig {
  std::string name;
  RngSeed base_seed{0};
  std::size_t trials = 1;
  std::optional<GridInstance> instance;
  WorkloadSpec workload;
  std::vector<PolicySpec> policies;
  std::optional<MetricsConfig> metrics;  // per-instance defaults when absent
  std::string output_dir;
  bool write_events = false;
};

// Relative file references inside the document resolve against base_dir.
ExperimentConfig parse_experiment_config(const nlohmann::json& doc, const std::string& base_dir = ".");
ExperimentConfig read_experiment_config(const std::string& path);

struct RunRecord {
  std::size_t trial = 0;
  RunReport report;
  std::uint64_t sequence_fingerprint = 0;
  std::optional<CompetitiveRatio> normalized_ratio;  // cost / baseline BMCF cost
  AssignmentLog log;
  std::vector<BatchRecord> batches;
};

struct ExperimentResult {
  std::string workload;
  std::vector<RunRecord> runs;  // trial-major, policies in config order
  std::vector<TrialSummary> summaries;  // one per policy
  std::vector<std::optional<double>> mean_normalized_ratio;  // parallel to summaries
};

// Runs every (trial, policy) pair, audits each log, computes the offline
// optimum once per trial and checks it lower-bounds every policy.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Cost ratio between two runs on the same trial. Throws MixedConfigs unless
// both runs share workload, seed and sequence.
CompetitiveRatio normalized_ratio(const RunRecord& run, const RunRecord& baseline);

std::uint64_t fingerprint(const RequestSequence& sequence);

std::string format_runs_csv(const ExperimentResult& result);
std::string format_summary_csv(const ExperimentResult& result);
std::string format_batches_csv(const ExperimentResult& result);

// Writes runs.csv, summary.csv, batches.csv (when a batch policy ran) and,
// if requested, events/<policy>_trial<k>.csv under dir.
void write_experiment_outputs(const ExperimentResult& result, const std::string& dir, bool write_events);

struct ReplayResult {
  AssignmentLog log;
  std::vector<BatchRecord> batches;
};

// One audited run of a single policy.
ReplayResult replay(const GridInstance& instance, const RequestSequence& sequence, const PolicySpec& policy,
                    RngSeed seed);

}  // namespace ofa
