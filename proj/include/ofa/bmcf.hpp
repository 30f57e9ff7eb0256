#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ofa/assignment.hpp"
#include "ofa/grid.hpp"
#include "ofa/rational.hpp"

namespace ofa {

// Batching + min-cost flow. reservation = 0, scarcity_lambda = 0 and
// concentration_threshold >= 1 give the unmitigated policy.
struct BatchConfig {
  int batch_size = 1;               // B >= 1
  TimeStep delay_budget = 0;        // tau
  int reservation = 0;              // H1: capacity units held back per facility
  Rational scarcity_lambda = 0;     // H2: weight of the 1/x depth penalty
  double concentration_threshold = 1.0;  // H3: modal nearest-facility share; >= 1 disables

  void validate() const;
  bool is_baseline() const { return reservation == 0 && scarcity_lambda == 0 && concentration_threshold >= 1.0; }
};

// Threshold used when H3 is switched on without an explicit value.
inline constexpr double kDefaultConcentrationThreshold = 0.75;

std::string batch_config_label(const BatchConfig& config);

enum class BatchTrigger { kSize, kDeadline, kConcentration, kFlush };

std::string to_string(BatchTrigger trigger);

struct BufferedRequest {
  std::size_t index = 0;
  Request request;
};

struct BatchRecord {
  std::vector<std::size_t> request_indices;
  TimeStep freeze_time = 0;
  BatchTrigger trigger = BatchTrigger::kSize;
  Distance batch_cost = 0;  // true distances, never the penalized solver cost
  std::map<FacilityId, int> per_facility_counts;
  int reservation_used = 0;  // reservation level after the relaxation ladder

  double max_facility_share() const;

  friend bool operator==(const BatchRecord&, const BatchRecord&) = default;
};

std::optional<BatchTrigger> should_freeze(std::span<const BufferedRequest> buffer, TimeStep now,
                                          const BatchConfig& config, const GridInstance& instance,
                                          const CapacityLedger& ledger);

// distance + lambda / (remcap - unit_index + 1): price of the unit_index-th
// unit consumed at a facility holding remcap units. 1 <= unit_index <= remcap.
Rational scarcity_cost(Distance distance, int unit_index, int remcap, const Rational& lambda);

struct BatchAssignment {
  std::vector<FacilityId> facilities;  // parallel to the batch
  BatchRecord record;                  // trigger and freeze_time left for the caller
};

// Solves the frozen batch exactly and commits it to the ledger. When the H1
// reservation leaves too little usable capacity the reservation is lowered
// one unit at a time; InfeasibleBatch is thrown only if the batch exceeds the
// unreserved remaining capacity.
BatchAssignment assign_batch(std::span<const BufferedRequest> batch, CapacityLedger& ledger,
                             const GridInstance& instance, const BatchConfig& config);

}  // namespace ofa
