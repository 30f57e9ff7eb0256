#include "ofa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ofa/errors.hpp"

namespace ofa {

void MetricsConfig::validate() const {
  if (proximity_window < 0) throw ConfigInvalid("proximity window must be non-negative");
  if (far_threshold < 1) throw ConfigInvalid("D_far must be positive");
  if (near_threshold < 0 || near_threshold >= far_threshold) throw ConfigInvalid("need 0 <= D_near < D_far");
  if (!(conc_threshold >= 0.0 && conc_threshold <= 1.0)) throw ConfigInvalid("rho_conc must lie in [0, 1]");
}

MetricsConfig MetricsConfig::defaults_for(const GridInstance& instance) {
  MetricsConfig config;
  config.proximity_window = 2;
  config.far_threshold = std::max<Distance>(1, diameter(instance) / 4);
  config.near_threshold = std::min<Distance>(2, config.far_threshold - 1);
  config.conc_threshold = 0.25;
  return config;
}

double boundary_oscillation_rate(const AssignmentLog& log, const GridInstance& instance,
                                 const MetricsConfig& config) {
  const auto& events = log.events();
  if (events.size() < 2) throw ConfigInvalid("boundary oscillation needs at least two events");
  std::size_t close_pairs = 0;
  std::size_t oscillations = 0;
  for (std::size_t i = 0; i + 1 < events.size(); ++i) {
    const AssignmentEvent& a = events[i];
    const AssignmentEvent& b = events[i + 1];
    if (manhattan_distance(a.location, b.location) > config.proximity_window) continue;
    ++close_pairs;
    if (a.facility_id != b.facility_id &&
        manhattan_distance(instance.facility(a.facility_id).location, instance.facility(b.facility_id).location) >=
            config.far_threshold) {
      ++oscillations;
    }
  }
  return close_pairs == 0 ? 0.0 : static_cast<double>(oscillations) / static_cast<double>(close_pairs);
}

double zone_collapse_rate(const AssignmentLog& log, const GridInstance& instance, const MetricsConfig& config) {
  if (log.size() == 0) return 0.0;
  CapacityLedger ledger(instance);
  std::size_t collapsed = 0;
  for (const AssignmentEvent& e : log.events()) {
    if (e.distance_cost >= config.far_threshold) {
      const bool full_nearby = std::any_of(instance.facilities().begin(), instance.facilities().end(),
                                           [&](const Facility& f) {
                                             return !ledger.available(f.id) &&
                                                    manhattan_distance(e.location, f.location) <= config.near_threshold;
                                           });
      if (full_nearby) ++collapsed;
    }
    ledger.commit(e.facility_id);
  }
  return static_cast<double>(collapsed) / static_cast<double>(log.size());
}

double batch_overconcentration_rate(std::span<const BatchRecord> batches, const MetricsConfig& config) {
  std::size_t eligible = 0;
  std::size_t concentrated = 0;
  // Shares are count/size; compare count >= (1 - rho) * size with a small
  // slack so that e.g. 3/4 >= 0.75 is not lost to rounding.
  for (const BatchRecord& b : batches) {
    if (b.request_indices.size() < 2) continue;
    ++eligible;
    if (b.max_facility_share() >= (1.0 - config.conc_threshold) - 1e-12) ++concentrated;
  }
  return eligible == 0 ? 0.0 : static_cast<double>(concentrated) / static_cast<double>(eligible);
}

Statistic describe(std::span<const double> values) {
  Statistic s;
  if (values.empty()) return s;
  double sum = 0.0;
  s.max = -std::numeric_limits<double>::infinity();
  for (double v : values) {
    sum += v;
    s.max = std::max(s.max, v);
  }
  const double n = static_cast<double>(values.size());
  s.mean = sum / n;
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.std_error = std::sqrt(sq / (n - 1.0)) / std::sqrt(n);
  }
  return s;
}

TrialSummary aggregate_trials(std::span<const RunReport> reports) {
  if (reports.empty()) throw MixedConfigs("no reports to aggregate");
  const RunReport& first = reports.front();
  for (const RunReport& r : reports) {
    if (r.workload != first.workload || r.policy != first.policy ||
        r.metrics.proximity_window != first.metrics.proximity_window ||
        r.metrics.far_threshold != first.metrics.far_threshold ||
        r.metrics.near_threshold != first.metrics.near_threshold ||
        r.metrics.conc_threshold != first.metrics.conc_threshold ||
        r.batch_overconcentration_rate.has_value() != first.batch_overconcentration_rate.has_value()) {
      throw MixedConfigs("cannot aggregate " + r.workload + "/" + r.policy + " with " + first.workload + "/" +
                         first.policy);
    }
  }

  TrialSummary summary;
  summary.workload = first.workload;
  summary.policy = first.policy;
  summary.metrics = first.metrics;

  std::vector<double> costs;
  std::vector<double> opts;
  std::vector<double> ratios;
  std::vector<double> bo;
  std::vector<double> zc;
  std::vector<double> oc;
  bool unbounded = false;
  for (const RunReport& r : reports) {
    summary.trials += r.trial_count;
    costs.push_back(static_cast<double>(r.alg_cost));
    opts.push_back(static_cast<double>(r.opt_cost));
    if (r.ratio.unbounded) {
      unbounded = true;
    } else {
      ratios.push_back(r.ratio.value);
    }
    bo.push_back(r.boundary_oscillation_rate);
    zc.push_back(r.zone_collapse_rate);
    if (r.batch_overconcentration_rate) oc.push_back(*r.batch_overconcentration_rate);
  }

  summary.cost = describe(costs);
  std::vector<double> sorted = costs;
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(sorted.size())));
  summary.p95_cost = sorted[std::max<std::size_t>(rank, 1) - 1];
  summary.mean_opt = describe(opts).mean;

  if (unbounded) {
    summary.mean_ratio = CompetitiveRatio{true, std::numeric_limits<double>::infinity()};
    summary.max_ratio = summary.mean_ratio;
  } else {
    const Statistic r = describe(ratios);
    summary.mean_ratio = CompetitiveRatio{false, r.mean};
    summary.max_ratio = CompetitiveRatio{false, r.max};
  }
  summary.bo_rate = describe(bo);
  summary.zc_rate = describe(zc);
  if (first.batch_overconcentration_rate) summary.oc_rate = describe(oc);
  return summary;
}

}  // namespace ofa
