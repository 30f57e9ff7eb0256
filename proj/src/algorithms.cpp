#include "ofa/algorithms.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "ofa/errors.hpp"

namespace ofa {

namespace {

struct Overload {
  std::string operator()(const GreedyPolicy&) const { return "greedy"; }
  std::string operator()(const RandomizedGreedyPolicy&) const { return "rgreedy"; }
  std::string operator()(const CsVoronoiConfig& c) const {
    std::string label = "csvoronoi(alpha=" + std::to_string(to_double(c.alpha));
    // trim "1.000000" to "1"
    while (label.back() == '0') label.pop_back();
    if (label.back() == '.') label.pop_back();
    return label + (c.smoothing == Smoothing::kDamped ? ",damped)" : ")");
  }
  std::string operator()(const HysteresisConfig& c) const {
    return "rgreedy_hyst(slack=" + std::to_string(c.slack) + ")";
  }
};

Distance nearest_distance(GridPoint request, const CapacityLedger& ledger, const GridInstance& instance) {
  Distance best = std::numeric_limits<Distance>::max();
  for (const Facility& f : instance.facilities()) {
    if (ledger.available(f.id)) best = std::min(best, manhattan_distance(request, f.location));
  }
  if (best == std::numeric_limits<Distance>::max()) {
    throw NoAvailableFacility("every facility is at capacity");
  }
  return best;
}

std::vector<FacilityId> nearest_set(GridPoint request, const CapacityLedger& ledger,
                                    const GridInstance& instance) {
  const Distance best = nearest_distance(request, ledger, instance);
  std::vector<FacilityId> ties;
  for (const Facility& f : instance.facilities()) {
    if (ledger.available(f.id) && manhattan_distance(request, f.location) == best) ties.push_back(f.id);
  }
  return ties;
}

}  // namespace

std::string policy_label(const OnlinePolicy& policy) { return std::visit(Overload{}, policy); }

FacilityId nearest_available(GridPoint request, const CapacityLedger& ledger, const GridInstance& instance) {
  return nearest_set(request, ledger, instance).front();
}

FacilityId randomized_greedy(GridPoint request, const CapacityLedger& ledger, const GridInstance& instance,
                             RngStream& rng) {
  const std::vector<FacilityId> ties = nearest_set(request, ledger, instance);
  if (ties.size() == 1) return ties.front();
  return ties[rng.uniform_below(ties.size())];
}

FacilityId cs_voronoi(GridPoint request, const CapacityLedger& ledger, const GridInstance& instance,
                      const CsVoronoiConfig& config) {
  if (config.alpha <= 0) throw ConfigInvalid("csvoronoi alpha must be positive");

  std::optional<FacilityId> best;
  if (config.smoothing == Smoothing::kNone) {
    Rational best_score;
    for (const Facility& f : instance.facilities()) {
      if (!ledger.available(f.id)) continue;
      Rational score = Rational(manhattan_distance(request, f.location)) - config.alpha * ledger.remaining(f.id);
      if (!best || score < best_score) {
        best = f.id;
        best_score = std::move(score);
      }
    }
  } else {
    const double alpha = to_double(config.alpha);
    double best_score = 0.0;
    for (const Facility& f : instance.facilities()) {
      if (!ledger.available(f.id)) continue;
      const double score = static_cast<double>(manhattan_distance(request, f.location)) -
                           alpha * std::log1p(static_cast<double>(ledger.remaining(f.id)));
      const double tolerance = 1e-12 * std::max({1.0, std::abs(score), std::abs(best_score)});
      if (!best || score < best_score - tolerance) {
        best = f.id;
        best_score = score;
      }
    }
  }
  if (!best) throw NoAvailableFacility("every facility is at capacity");
  return *best;
}

FacilityId greedy_with_hysteresis(GridPoint request, const CapacityLedger& ledger,
                                  const GridInstance& instance, const HysteresisConfig& config,
                                  std::optional<FacilityId> previous_choice, RngStream& rng) {
  if (config.slack < 0) throw ConfigInvalid("hysteresis slack must be non-negative");
  const Distance d_min = nearest_distance(request, ledger, instance);
  if (previous_choice && *previous_choice >= 0 &&
      static_cast<std::size_t>(*previous_choice) < instance.facility_count() &&
      ledger.available(*previous_choice) &&
      manhattan_distance(request, instance.facility(*previous_choice).location) <= d_min + config.slack) {
    return *previous_choice;
  }
  return randomized_greedy(request, ledger, instance, rng);
}

}  // namespace ofa
