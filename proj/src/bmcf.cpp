#include "ofa/bmcf.hpp"

#include <algorithm>
#include <cstdio>

#include "ofa/errors.hpp"
#include "ofa/mcf.hpp"

namespace ofa {

void BatchConfig::validate() const {
  if (batch_size < 1) throw ConfigInvalid("batch size B must be at least 1");
  if (delay_budget < 0) throw ConfigInvalid("delay budget tau must be non-negative");
  if (reservation < 0) throw ConfigInvalid("rho_reserve must be non-negative");
  if (scarcity_lambda < 0) throw ConfigInvalid("lambda must be non-negative");
  if (!(concentration_threshold >= 0.0 && concentration_threshold <= 1.0)) {
    throw ConfigInvalid("theta_c must lie in [0, 1]");
  }
}

std::string batch_config_label(const BatchConfig& config) {
  std::string label = "bmcf(B=" + std::to_string(config.batch_size) + ",tau=" + std::to_string(config.delay_budget);
  if (config.reservation > 0) label += ",rho=" + std::to_string(config.reservation);
  if (config.scarcity_lambda > 0) label += ",lambda=" + to_string(config.scarcity_lambda);
  if (config.concentration_threshold < 1.0) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%g", config.concentration_threshold);
    label += std::string(",theta=") + buffer;
  }
  return label + ")";
}

std::string to_string(BatchTrigger trigger) {
  switch (trigger) {
    case BatchTrigger::kSize: return "size";
    case BatchTrigger::kDeadline: return "deadline";
    case BatchTrigger::kConcentration: return "concentration";
    case BatchTrigger::kFlush: return "flush";
  }
  return "unknown";
}

double BatchRecord::max_facility_share() const {
  if (request_indices.empty()) return 0.0;
  int top = 0;
  for (const auto& [facility, count] : per_facility_counts) top = std::max(top, count);
  return static_cast<double>(top) / static_cast<double>(request_indices.size());
}

std::optional<BatchTrigger> should_freeze(std::span<const BufferedRequest> buffer, TimeStep now,
                                          const BatchConfig& config, const GridInstance& instance,
                                          const CapacityLedger& /*ledger*/) {
  if (buffer.empty()) return std::nullopt;
  if (buffer.size() >= static_cast<std::size_t>(config.batch_size)) return BatchTrigger::kSize;

  TimeStep oldest = buffer.front().request.arrival_time;
  for (const BufferedRequest& b : buffer) oldest = std::min(oldest, b.request.arrival_time);
  if (now - oldest >= config.delay_budget) return BatchTrigger::kDeadline;

  if (config.concentration_threshold < 1.0 && buffer.size() >= 2 && instance.facility_count() > 0) {
    // Nearest facility by distance alone, lowest id on ties.
    std::vector<int> votes(instance.facility_count(), 0);
    for (const BufferedRequest& b : buffer) {
      FacilityId nearest = 0;
      Distance best = manhattan_distance(b.request.location, instance.facility(0).location);
      for (const Facility& f : instance.facilities()) {
        const Distance d = manhattan_distance(b.request.location, f.location);
        if (d < best) {
          best = d;
          nearest = f.id;
        }
      }
      ++votes[static_cast<std::size_t>(nearest)];
    }
    const int modal = *std::max_element(votes.begin(), votes.end());
    if (static_cast<double>(modal) >= config.concentration_threshold * static_cast<double>(buffer.size())) {
      return BatchTrigger::kConcentration;
    }
  }
  return std::nullopt;
}

Rational scarcity_cost(Distance distance, int unit_index, int remcap, const Rational& lambda) {
  if (unit_index < 1 || unit_index > remcap) {
    throw ConfigInvalid("scarcity unit index " + std::to_string(unit_index) + " outside [1, " +
                        std::to_string(remcap) + "]");
  }
  return Rational(distance) + lambda / Rational(remcap - unit_index + 1);
}

namespace {

std::vector<FacilityId> solve_plain(std::span<const GridPoint> points, const CapacityLedger& usable,
                                    const GridInstance& instance) {
  const FlowNetwork<Distance> network = build_batch_network(points, usable, instance);
  return solve_min_cost_flow(network, static_cast<std::int64_t>(points.size())).assignment;
}

// H2: the k-th unit into facility f is priced lambda * psi(remcap - k + 1) on
// its own parallel facility->sink arc. The penalty grows with k, so the
// solver fills the cheap units first and the total equals the per-unit
// scarcity_cost sum.
std::vector<FacilityId> solve_penalized(std::span<const GridPoint> points, const CapacityLedger& usable,
                                        const CapacityLedger& actual, const GridInstance& instance,
                                        const Rational& lambda) {
  FlowNetwork<Rational> network(points.size(), instance.facility_count());
  for (std::size_t i = 0; i < points.size(); ++i) {
    network.add_arc(network.source(), network.request_node(i), 1, Rational(0));
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (const Facility& f : instance.facilities()) {
      if (!usable.available(f.id)) continue;
      network.add_arc(network.request_node(i), network.facility_node(f.id), 1,
                      Rational(manhattan_distance(points[i], f.location)));
    }
  }
  for (const Facility& f : instance.facilities()) {
    const int units = std::min<int>(usable.remaining(f.id), static_cast<int>(points.size()));
    for (int k = 1; k <= units; ++k) {
      network.add_arc(network.facility_node(f.id), network.sink(), 1,
                      scarcity_cost(0, k, actual.remaining(f.id), lambda));
    }
  }
  return solve_min_cost_flow(network, static_cast<std::int64_t>(points.size())).assignment;
}

}  // namespace

BatchAssignment assign_batch(std::span<const BufferedRequest> batch, CapacityLedger& ledger,
                             const GridInstance& instance, const BatchConfig& config) {
  if (batch.empty()) throw InfeasibleBatch("empty batch");

  const auto demand = static_cast<std::int64_t>(batch.size());
  int reservation = config.reservation;
  std::vector<int> usable_caps(ledger.size());
  for (;; --reservation) {
    if (reservation < 0) {
      throw InfeasibleBatch("batch of " + std::to_string(demand) + " exceeds remaining capacity " +
                            std::to_string(total_remaining(ledger)));
    }
    std::int64_t usable_total = 0;
    for (std::size_t f = 0; f < ledger.size(); ++f) {
      usable_caps[f] = std::max(0, ledger.remcap()[f] - reservation);
      usable_total += usable_caps[f];
    }
    if (usable_total >= demand) break;
  }
  const CapacityLedger usable(usable_caps);

  std::vector<GridPoint> points;
  points.reserve(batch.size());
  for (const BufferedRequest& b : batch) points.push_back(b.request.location);

  BatchAssignment result;
  result.facilities = config.scarcity_lambda > 0
                          ? solve_penalized(points, usable, ledger, instance, config.scarcity_lambda)
                          : solve_plain(points, usable, instance);
  result.record.reservation_used = reservation;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const FacilityId f = result.facilities[i];
    ledger.commit(f);
    result.record.request_indices.push_back(batch[i].index);
    result.record.batch_cost += manhattan_distance(points[i], instance.facility(f).location);
    ++result.record.per_facility_counts[f];
  }
  return result;
}

}  // namespace ofa
