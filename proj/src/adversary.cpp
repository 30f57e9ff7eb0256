#include "ofa/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ofa/errors.hpp"

namespace ofa {

namespace {

void check_request_count(const GridInstance& instance, std::size_t n) {
  if (static_cast<std::int64_t>(n) > instance.total_capacity()) {
    throw InfeasibleRequestCount(std::to_string(n) + " requests exceed total capacity " +
                                 std::to_string(instance.total_capacity()));
  }
}

GridPoint random_vertex(const GridInstance& instance, RngStream& rng) {
  const auto cell = rng.uniform_below(static_cast<std::uint64_t>(instance.rows()) *
                                      static_cast<std::uint64_t>(instance.cols()));
  return GridPoint{static_cast<int>(cell % static_cast<std::uint64_t>(instance.cols())) + 1,
                   static_cast<int>(cell / static_cast<std::uint64_t>(instance.cols())) + 1};
}

int round_clamp(double v, int hi) {
  const long r = std::lround(v);
  return static_cast<int>(std::clamp<long>(r, 1, hi));
}

}  // namespace

std::string to_string(WorkloadKind kind) {
  switch (kind) {
    case WorkloadKind::kUniformIid: return "uniform_iid";
    case WorkloadKind::kClusteredBursts: return "clustered_bursts";
    case WorkloadKind::kZoneCollapse: return "zone_collapse";
    case WorkloadKind::kOscillationTrap: return "oscillation_trap";
    case WorkloadKind::kBatchBoundaryTrap: return "batch_boundary_trap";
  }
  return "unknown";
}

std::optional<WorkloadKind> parse_workload_kind(const std::string& name) {
  for (WorkloadKind k : {WorkloadKind::kUniformIid, WorkloadKind::kClusteredBursts, WorkloadKind::kZoneCollapse,
                         WorkloadKind::kOscillationTrap, WorkloadKind::kBatchBoundaryTrap}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::optional<Placement> parse_placement(const std::string& name) {
  if (name == "lattice") return Placement::kLattice;
  if (name == "random") return Placement::kRandom;
  return std::nullopt;
}

RequestSequence gen_uniform(const GridInstance& instance, std::size_t n, RngSeed seed) {
  check_request_count(instance, n);
  RngStream rng(seed);
  std::vector<GridPoint> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) points.push_back(random_vertex(instance, rng));
  return RequestSequence::from_points(points);
}

RequestSequence gen_clustered(const GridInstance& instance, std::size_t n, int centers, double sigma,
                              int burst_len, RngSeed seed) {
  if (centers < 1) throw ConfigInvalid("clustered workload needs at least one center");
  if (!(sigma >= 0.0)) throw ConfigInvalid("clustered workload sigma must be non-negative");
  if (burst_len < 1) throw ConfigInvalid("clustered workload burst length must be positive");
  check_request_count(instance, n);

  RngStream rng(seed);
  std::vector<GridPoint> cluster_centers;
  for (int c = 0; c < centers; ++c) cluster_centers.push_back(random_vertex(instance, rng));

  std::vector<GridPoint> points;
  points.reserve(n);
  GridPoint burst_center;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % static_cast<std::size_t>(burst_len) == 0) {
      burst_center = cluster_centers[rng.uniform_below(cluster_centers.size())];
    }
    const double dx = sigma * rng.standard_normal();
    const double dy = sigma * rng.standard_normal();
    points.push_back(GridPoint{round_clamp(burst_center.x + dx, instance.cols()),
                               round_clamp(burst_center.y + dy, instance.rows())});
  }
  return RequestSequence::from_points(points);
}

GridInstance place_facilities(int rows, int cols, int count, int capacity, Placement placement, RngSeed seed) {
  if (rows < 1 || cols < 1) throw ConfigInvalid("grid dimensions must be positive");
  if (count < 1) throw ConfigInvalid("need at least one facility");
  std::vector<FacilitySpec> specs;
  specs.reserve(static_cast<std::size_t>(count));

  if (placement == Placement::kLattice) {
    // Near-square lattice with cells proportional to the grid's aspect ratio.
    int per_row = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count) * cols / rows))));
    per_row = std::min(per_row, count);
    const int lattice_rows = (count + per_row - 1) / per_row;
    for (int i = 0; i < count; ++i) {
      const int lx = i % per_row;
      const int ly = i / per_row;
      const double fx = (lx + 0.5) * cols / per_row + 0.5;
      const double fy = (ly + 0.5) * rows / lattice_rows + 0.5;
      specs.push_back(FacilitySpec{GridPoint{round_clamp(std::floor(fx), cols), round_clamp(std::floor(fy), rows)},
                                   capacity});
    }
  } else {
    const std::int64_t cells = static_cast<std::int64_t>(rows) * cols;
    if (count > cells) throw GeometryDoesNotFit("more facilities than grid vertices");
    std::vector<std::int64_t> order(static_cast<std::size_t>(cells));
    std::iota(order.begin(), order.end(), 0);
    RngStream rng(seed);
    for (int i = 0; i < count; ++i) {
      const auto j = static_cast<std::size_t>(i) + rng.uniform_below(static_cast<std::uint64_t>(cells - i));
      std::swap(order[static_cast<std::size_t>(i)], order[j]);
      const std::int64_t cell = order[static_cast<std::size_t>(i)];
      specs.push_back(FacilitySpec{GridPoint{static_cast<int>(cell % cols) + 1, static_cast<int>(cell / cols) + 1},
                                   capacity});
    }
  }
  return GridInstance(rows, cols, specs);
}

GeneratedWorkload gen_zone_collapse(const ZoneCollapseParams& params, RngSeed seed) {
  if (params.center_capacity < 0 || params.inner_count < 0 || params.region_radius < 0) {
    throw ConfigInvalid("zone collapse counts must be non-negative");
  }
  if (params.rows < 1 || params.cols < 1) throw GeometryDoesNotFit("empty grid");
  if (params.far_offset <= params.region_radius) {
    throw GeometryDoesNotFit("far facility must lie outside the collapse region");
  }
  const GridPoint center{(params.cols + 1) / 2, (params.rows + 1) / 2};
  const auto inside = [&](GridPoint p) {
    return p.x >= 1 && p.x <= params.cols && p.y >= 1 && p.y <= params.rows;
  };

  std::optional<GridPoint> far;
  for (GridPoint candidate : {GridPoint{center.x + params.far_offset, center.y},
                              GridPoint{center.x - params.far_offset, center.y},
                              GridPoint{center.x, center.y + params.far_offset},
                              GridPoint{center.x, center.y - params.far_offset}}) {
    if (inside(candidate)) {
      far = candidate;
      break;
    }
  }
  for (int y = 1; !far && y <= params.rows; ++y) {
    for (int x = 1; !far && x <= params.cols; ++x) {
      if (manhattan_distance({x, y}, center) == params.far_offset) far = GridPoint{x, y};
    }
  }
  if (!far) {
    throw GeometryDoesNotFit("no vertex at distance " + std::to_string(params.far_offset) + " from the center of a " +
                             std::to_string(params.rows) + "x" + std::to_string(params.cols) + " grid");
  }

  const FacilitySpec specs[] = {{center, params.center_capacity}, {*far, params.inner_count}};
  GridInstance instance(params.rows, params.cols, specs);

  std::vector<GridPoint> region;
  for (int dy = -params.region_radius; dy <= params.region_radius; ++dy) {
    for (int dx = -params.region_radius; dx <= params.region_radius; ++dx) {
      const GridPoint p{center.x + dx, center.y + dy};
      if (std::abs(dx) + std::abs(dy) <= params.region_radius && inside(p)) region.push_back(p);
    }
  }

  RngStream rng(seed);
  std::vector<GridPoint> points(static_cast<std::size_t>(params.center_capacity), center);
  for (int i = 0; i < params.inner_count; ++i) points.push_back(region[rng.uniform_below(region.size())]);
  return GeneratedWorkload{std::move(instance), RequestSequence::from_points(points)};
}

GeneratedWorkload gen_oscillation_trap(const OscillationTrapParams& params, RngSeed /*seed*/) {
  const int d = params.separation;
  if (d % 2 != 0) throw OddSeparation("separation " + std::to_string(d) + " has no grid midpoint");
  if (d < 2) throw GeometryDoesNotFit("separation must be at least 2");
  if (params.pairs < 1) throw ConfigInvalid("need at least one pair");
  if (params.rows < 1 || params.cols < d + 1) {
    throw GeometryDoesNotFit("a " + std::to_string(params.rows) + "x" + std::to_string(params.cols) +
                             " grid cannot hold a pair at separation " + std::to_string(d));
  }

  // Block width d + 1, gap 2d + 1 between blocks and between row bands.
  const int stride_x = 3 * d + 2;
  const int stride_y = 2 * d + 1;
  const int per_band = (params.cols - (d + 1)) / stride_x + 1;
  const int bands = (params.rows - 1) / stride_y + 1;
  if (static_cast<long>(per_band) * bands < params.pairs) {
    throw GeometryDoesNotFit(std::to_string(params.pairs) + " isolated pairs do not fit");
  }

  std::vector<FacilitySpec> specs;
  std::vector<GridPoint> points;
  for (int p = 0; p < params.pairs; ++p) {
    const int x0 = 1 + (p % per_band) * stride_x;
    const int y = 1 + (p / per_band) * stride_y;
    const GridPoint left{x0, y};
    const GridPoint right{x0 + d, y};
    specs.push_back({left, 1});
    specs.push_back({right, 1});
    points.push_back({x0 + d / 2, y});
    points.push_back(left);
  }
  return GeneratedWorkload{GridInstance(params.rows, params.cols, specs), RequestSequence::from_points(points)};
}

GeneratedWorkload gen_batch_boundary_trap(const BatchBoundaryTrapParams& params, RngSeed /*seed*/) {
  if (params.delta < 2) throw ConfigInvalid("delta must be at least 2");
  if (params.capacity < 1) throw ConfigInvalid("capacity must be at least 1");
  if (params.group_gap < 0) throw ConfigInvalid("group gap must be non-negative");

  GridPoint f0;
  GridPoint f1;
  GridPoint f2;
  if (params.cols >= params.delta + 2 && params.rows >= 1) {
    f0 = {1, 1};
    f1 = {2, 1};
    f2 = {2 + params.delta, 1};
  } else if (params.cols >= params.delta + 1 && params.rows >= 2) {
    f1 = {1, 1};
    f0 = {1, 2};
    f2 = {1 + params.delta, 1};
  } else {
    throw GeometryDoesNotFit("a " + std::to_string(params.rows) + "x" + std::to_string(params.cols) +
                             " grid has no line for delta " + std::to_string(params.delta));
  }
  if (params.offset_far) {
    if (params.rows < 2) throw GeometryDoesNotFit("offset needs a second row");
    f2.y += 1;
  }

  const FacilitySpec specs[] = {{f0, params.capacity}, {f1, params.capacity}, {f2, params.capacity}};
  GridInstance instance(params.rows, params.cols, specs);

  RequestSequence sequence;
  const GridPoint groups[] = {f0, f1, f1};
  TimeStep t = 1;
  for (const GridPoint& at : groups) {
    for (int j = 0; j < params.capacity; ++j) sequence.requests.push_back(Request{at, t++});
    t += params.group_gap;
  }
  return GeneratedWorkload{std::move(instance), std::move(sequence)};
}

}  // namespace ofa
