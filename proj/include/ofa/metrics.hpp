#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ofa/assignment.hpp"
#include "ofa/bmcf.hpp"
#include "ofa/grid.hpp"
#include "ofa/opt_oracle.hpp"
#include "ofa/random.hpp"

namespace ofa {

struct MetricsConfig {
  Distance proximity_window = 2;  // w: "same small region" radius for consecutive requests
  Distance far_threshold = 1;     // D_far
  Distance near_threshold = 0;    // D_near, < D_far
  double conc_threshold = 0.25;   // rho_conc

  void validate() const;

  // w = 2, D_far = max(1, diameter / 4), D_near = min(2, D_far - 1),
  // rho_conc = 0.25.
  static MetricsConfig defaults_for(const GridInstance& instance);
};

// Among consecutive event pairs whose requests lie within w of each other,
// the fraction assigned to different facilities at least D_far apart.
// 0 when no pair qualifies. Requires at least two events.
double boundary_oscillation_rate(const AssignmentLog& log, const GridInstance& instance,
                                 const MetricsConfig& config);

// Fraction of events served at distance >= D_far while a facility within
// D_near of the request was already full. Capacity is replayed in log order.
double zone_collapse_rate(const AssignmentLog& log, const GridInstance& instance, const MetricsConfig& config);

// Fraction of batches of size >= 2 whose busiest facility takes at least a
// (1 - rho_conc) share.
double batch_overconcentration_rate(std::span<const BatchRecord> batches, const MetricsConfig& config);

struct RunReport {
  std::string workload;
  std::string policy;
  RngSeed seed;
  Distance alg_cost = 0;
  Distance opt_cost = 0;
  CompetitiveRatio ratio;
  double boundary_oscillation_rate = 0.0;
  double zone_collapse_rate = 0.0;
  std::optional<double> batch_overconcentration_rate;  // batch policies only
  std::size_t trial_count = 1;
  MetricsConfig metrics;
};

struct Statistic {
  double mean = 0.0;
  double max = 0.0;
  double std_error = 0.0;
};

struct TrialSummary {
  std::string workload;
  std::string policy;
  std::size_t trials = 0;
  Statistic cost;
  double p95_cost = 0.0;
  double mean_opt = 0.0;
  CompetitiveRatio mean_ratio;  // unbounded if any trial was
  CompetitiveRatio max_ratio;
  Statistic bo_rate;
  Statistic zc_rate;
  std::optional<Statistic> oc_rate;
  MetricsConfig metrics;
};

// Mean / max / standard error per metric. Throws MixedConfigs when the
// reports do not share workload, policy and metrics settings.
TrialSummary aggregate_trials(std::span<const RunReport> reports);

Statistic describe(std::span<const double> values);

}  // namespace ofa
