#pragma once

// Test-only reference computations. Nothing here calls into the solver or
// the policies; every value is derived by enumeration or direct arithmetic.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ofa/grid.hpp"
#include "ofa/random.hpp"

namespace ofa::test {

inline std::int64_t l1(GridPoint a, GridPoint b) {
  const std::int64_t dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  const std::int64_t dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  return dx + dy;
}

// Visits every map points[i] -> facility index that respects caps.
inline void enumerate_assignments(std::size_t n, const std::vector<int>& caps,
                                  const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> current(n, 0);
  std::vector<int> load(caps.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      visit(current);
      return;
    }
    for (std::size_t f = 0; f < caps.size(); ++f) {
      if (load[f] >= caps[f]) continue;
      ++load[f];
      current[i] = static_cast<int>(f);
      rec(i + 1);
      --load[f];
    }
  };
  rec(0);
}

struct EnumeratedOptimum {
  std::int64_t cost = std::numeric_limits<std::int64_t>::max();
  std::size_t optimal_count = 0;
  // Distinct multisets of (location, facility) among the optimal maps.
  std::set<std::multiset<std::pair<GridPoint, int>>> optimal_pair_sets;
};

inline EnumeratedOptimum enumerate_optimum(const std::vector<GridPoint>& points, const std::vector<GridPoint>& sites,
                                           const std::vector<int>& caps) {
  EnumeratedOptimum best;
  enumerate_assignments(points.size(), caps, [&](const std::vector<int>& map) {
    std::int64_t cost = 0;
    for (std::size_t i = 0; i < points.size(); ++i) cost += l1(points[i], sites[static_cast<std::size_t>(map[i])]);
    std::multiset<std::pair<GridPoint, int>> pairs;
    for (std::size_t i = 0; i < points.size(); ++i) pairs.emplace(points[i], map[i]);
    if (cost < best.cost) {
      best.cost = cost;
      best.optimal_count = 0;
      best.optimal_pair_sets.clear();
    }
    if (cost == best.cost) {
      ++best.optimal_count;
      best.optimal_pair_sets.insert(pairs);
    }
  });
  return best;
}

// Small random instance description used by several property tests.
struct RandomCase {
  int rows = 1;
  int cols = 1;
  std::vector<GridPoint> sites;
  std::vector<int> caps;
  std::vector<GridPoint> points;
};

inline GridPoint random_point(RngStream& rng, int rows, int cols) {
  return GridPoint{static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(cols))) + 1,
                   static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(rows))) + 1};
}

// Feasible case: total capacity >= number of points.
inline RandomCase random_case(std::uint64_t seed, int max_side, int max_facilities, int max_points, int max_cap) {
  RngStream rng(RngSeed{seed});
  RandomCase c;
  c.rows = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(max_side)));
  c.cols = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(max_side)));
  const int facilities = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(max_facilities)));
  int total = 0;
  for (int f = 0; f < facilities; ++f) {
    c.sites.push_back(random_point(rng, c.rows, c.cols));
    c.caps.push_back(static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(max_cap) + 1)));
    total += c.caps.back();
  }
  if (total == 0) {
    c.caps[0] = 1;
    total = 1;
  }
  const int n = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(std::min(total, max_points))));
  for (int i = 0; i < n; ++i) c.points.push_back(random_point(rng, c.rows, c.cols));
  return c;
}

}  // namespace ofa::test
