#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ofa/assignment.hpp"
#include "ofa/grid.hpp"

namespace ofa {

struct OptResult {
  Distance total_cost = 0;
  std::vector<FacilityId> assignment;  // per request index
};

// Offline optimum: one transportation solve over the whole sequence. Arrival
// times play no role. Throws InfeasibleSequence when demand exceeds capacity.
OptResult offline_opt(const GridInstance& instance, const RequestSequence& sequence);

inline constexpr std::size_t kBruteForceMaxRequests = 8;
inline constexpr std::size_t kBruteForceMaxFacilities = 4;

// Exhaustive enumeration of every capacity-respecting request -> facility map.
// Among equal-cost optima the lexicographically smallest assignment wins.
// Throws TooLargeForEnumeration beyond 8 requests or 4 facilities.
OptResult brute_force_opt(const GridInstance& instance, const RequestSequence& sequence);

// alg / opt, with opt = 0 mapped to 1 (alg = 0) or "unbounded" (alg > 0).
struct CompetitiveRatio {
  bool unbounded = false;
  double value = 1.0;

  std::string to_string() const;
};

CompetitiveRatio competitive_ratio(double alg_cost, Distance opt_cost);

}  // namespace ofa
