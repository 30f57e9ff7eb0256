#include "ofa/engine.hpp"

#include <optional>
#include <string>

#include "ofa/errors.hpp"

namespace ofa {

namespace {

void check_feasible(const GridInstance& instance, const RequestSequence& sequence) {
  validate_sequence(instance, sequence);
  if (static_cast<std::int64_t>(sequence.size()) > instance.total_capacity()) {
    throw InfeasibleSequence(std::to_string(sequence.size()) + " requests exceed total capacity " +
                             std::to_string(instance.total_capacity()));
  }
}

}  // namespace

AssignmentLog run_online(const GridInstance& instance, const RequestSequence& sequence,
                         const OnlinePolicy& policy, RngSeed seed) {
  std::optional<FacilityId> previous;
  OnlineChooser chooser = [&](GridPoint p, const CapacityLedger& ledger, const GridInstance& inst,
                              RngStream& rng) -> FacilityId {
    if (std::holds_alternative<GreedyPolicy>(policy)) return nearest_available(p, ledger, inst);
    if (std::holds_alternative<RandomizedGreedyPolicy>(policy)) return randomized_greedy(p, ledger, inst, rng);
    if (const auto* cs = std::get_if<CsVoronoiConfig>(&policy)) return cs_voronoi(p, ledger, inst, *cs);
    const auto& hyst = std::get<HysteresisConfig>(policy);
    previous = greedy_with_hysteresis(p, ledger, inst, hyst, previous, rng);
    return *previous;
  };
  return run_online(instance, sequence, chooser, seed);
}

AssignmentLog run_online(const GridInstance& instance, const RequestSequence& sequence,
                         const OnlineChooser& chooser, RngSeed seed) {
  check_feasible(instance, sequence);
  CapacityLedger ledger(instance);
  RngStream rng(mix_seed(seed, kPolicyStream));
  AssignmentLog log;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const Request& r = sequence.requests[i];
    if (total_remaining(ledger) == 0) {
      throw InfeasibleSequence("request " + std::to_string(i) + " arrived with no capacity left");
    }
    const FacilityId f = chooser(r.location, ledger, instance, rng);
    if (f < 0 || static_cast<std::size_t>(f) >= instance.facility_count() || !ledger.available(f)) {
      throw PolicyViolation("policy chose unavailable facility " + std::to_string(f) + " for request " +
                            std::to_string(i));
    }
    ledger.commit(f);
    log.append(AssignmentEvent{i, r.location, f, manhattan_distance(r.location, instance.facility(f).location),
                               r.arrival_time, r.arrival_time});
  }
  return log;
}

SemiOnlineResult run_semi_online(const GridInstance& instance, const RequestSequence& sequence,
                                 const BatchConfig& config, RngSeed /*seed*/) {
  config.validate();
  check_feasible(instance, sequence);

  CapacityLedger ledger(instance);
  SemiOnlineResult result;
  std::vector<BufferedRequest> buffer;

  const auto freeze = [&](TimeStep now, BatchTrigger trigger) {
    BatchAssignment batch = assign_batch(buffer, ledger, instance, config);
    for (std::size_t k = 0; k < buffer.size(); ++k) {
      const BufferedRequest& b = buffer[k];
      const FacilityId f = batch.facilities[k];
      result.log.append(AssignmentEvent{b.index, b.request.location, f,
                                        manhattan_distance(b.request.location, instance.facility(f).location),
                                        b.request.arrival_time, now});
    }
    batch.record.freeze_time = now;
    batch.record.trigger = trigger;
    result.batches.push_back(std::move(batch.record));
    buffer.clear();
  };

  std::size_t next = 0;
  const std::size_t n = sequence.size();
  while (next < n || !buffer.empty()) {
    // Next moment anything can happen: an arrival or the oldest deadline.
    TimeStep now = next < n ? sequence.requests[next].arrival_time : 0;
    if (!buffer.empty()) {
      const TimeStep deadline = buffer.front().request.arrival_time + config.delay_budget;
      now = next < n ? std::min(now, deadline) : deadline;
    }

    bool arrived = false;
    while (next < n && sequence.requests[next].arrival_time == now) {
      buffer.push_back(BufferedRequest{next, sequence.requests[next]});
      ++next;
      arrived = true;
      if (auto trigger = should_freeze(buffer, now, config, instance, ledger)) freeze(now, *trigger);
    }
    if (!arrived && !buffer.empty()) {
      if (auto trigger = should_freeze(buffer, now, config, instance, ledger)) freeze(now, *trigger);
    }
    if (next == n && !buffer.empty() && arrived) freeze(now, BatchTrigger::kFlush);
  }
  return result;
}

}  // namespace ofa
