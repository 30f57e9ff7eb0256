#include "ofa/opt_oracle.hpp"

#include <cstdio>
#include <limits>

#include "ofa/errors.hpp"
#include "ofa/mcf.hpp"

namespace ofa {

namespace {

void check_capacity(const GridInstance& instance, const RequestSequence& sequence) {
  validate_sequence(instance, sequence);
  if (static_cast<std::int64_t>(sequence.size()) > instance.total_capacity()) {
    throw InfeasibleSequence(std::to_string(sequence.size()) + " requests exceed total capacity " +
                             std::to_string(instance.total_capacity()));
  }
}

}  // namespace

OptResult offline_opt(const GridInstance& instance, const RequestSequence& sequence) {
  check_capacity(instance, sequence);
  if (sequence.empty()) return {};

  std::vector<GridPoint> points;
  points.reserve(sequence.size());
  for (const Request& r : sequence.requests) points.push_back(r.location);

  const CapacityLedger ledger(instance);
  const FlowNetwork<Distance> network = build_batch_network(points, ledger, instance);
  FlowSolution<Distance> solution = solve_min_cost_flow(network, static_cast<std::int64_t>(points.size()));
  return OptResult{solution.total_cost, std::move(solution.assignment)};
}

OptResult brute_force_opt(const GridInstance& instance, const RequestSequence& sequence) {
  const std::size_t n = sequence.size();
  const std::size_t k = instance.facility_count();
  if (n > kBruteForceMaxRequests || k > kBruteForceMaxFacilities) {
    throw TooLargeForEnumeration(std::to_string(n) + " requests x " + std::to_string(k) +
                                 " facilities exceeds the enumeration guard");
  }
  check_capacity(instance, sequence);
  if (n == 0) return {};

  std::vector<FacilityId> current(n, 0);
  std::vector<int> load(k, 0);
  std::optional<OptResult> best;

  // Odometer over k^n maps; the first digit is the most significant, so the
  // first minimum seen is the lexicographically smallest.
  while (true) {
    std::fill(load.begin(), load.end(), 0);
    bool fits = true;
    Distance cost = 0;
    for (std::size_t i = 0; i < n && fits; ++i) {
      const Facility& f = instance.facility(current[i]);
      fits = ++load[static_cast<std::size_t>(f.id)] <= f.capacity;
      cost += manhattan_distance(sequence.requests[i].location, f.location);
    }
    if (fits && (!best || cost < best->total_cost)) best = OptResult{cost, current};

    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (static_cast<std::size_t>(++current[pos]) < k) break;
      current[pos] = 0;
      if (pos == 0) return *best;
    }
  }
}

std::string CompetitiveRatio::to_string() const {
  if (unbounded) return "unbounded";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

CompetitiveRatio competitive_ratio(double alg_cost, Distance opt_cost) {
  if (opt_cost > 0) return CompetitiveRatio{false, alg_cost / static_cast<double>(opt_cost)};
  if (alg_cost > 0) return CompetitiveRatio{true, std::numeric_limits<double>::infinity()};
  return CompetitiveRatio{false, 1.0};
}

}  // namespace ofa
