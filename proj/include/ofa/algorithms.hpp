#pragma once

#include <optional>
#include <string>
#include <variant>

#include "ofa/grid.hpp"
#include "ofa/random.hpp"
#include "ofa/rational.hpp"

namespace ofa {

enum class Smoothing { kNone, kDamped };

struct CsVoronoiConfig {
  Rational alpha = 1;  // distance units per capacity unit, > 0
  Smoothing smoothing = Smoothing::kNone;
};

struct HysteresisConfig {
  Distance slack = 1;  // 0 recovers plain randomized greedy
};

struct GreedyPolicy {};
struct RandomizedGreedyPolicy {};

using OnlinePolicy = std::variant<GreedyPolicy, RandomizedGreedyPolicy, CsVoronoiConfig, HysteresisConfig>;

// Short, stable label used in reports, e.g. "csvoronoi(alpha=1,damped)".
std::string policy_label(const OnlinePolicy& policy);

// All policies below throw NoAvailableFacility when every facility is full
// and only ever return a facility with remaining capacity.

// Available facility of minimum distance, lowest id on ties.
FacilityId nearest_available(GridPoint request, const CapacityLedger& ledger, const GridInstance& instance);

// Uniform draw from the set of nearest available facilities.
FacilityId randomized_greedy(GridPoint request, const CapacityLedger& ledger, const GridInstance& instance,
                             RngStream& rng);

// Minimizes d(u,f) - alpha * remcap(f), or d(u,f) - alpha * ln(1 + remcap(f))
// when damped. Undamped scores are compared exactly; damped scores with a
// 1e-12 relative tolerance. Ties go to the lowest id.
FacilityId cs_voronoi(GridPoint request, const CapacityLedger& ledger, const GridInstance& instance,
                      const CsVoronoiConfig& config);

// Sticks with previous_choice while it is available and within slack of the
// nearest available distance; otherwise falls back to randomized_greedy.
FacilityId greedy_with_hysteresis(GridPoint request, const CapacityLedger& ledger,
                                  const GridInstance& instance, const HysteresisConfig& config,
                                  std::optional<FacilityId> previous_choice, RngStream& rng);

}  // namespace ofa
