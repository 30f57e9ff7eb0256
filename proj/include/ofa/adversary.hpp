#pragma once

#include <optional>
#include <string>

#include "ofa/assignment.hpp"
#include "ofa/grid.hpp"
#include "ofa/random.hpp"

namespace ofa {

enum class WorkloadKind { kUniformIid, kClusteredBursts, kZoneCollapse, kOscillationTrap, kBatchBoundaryTrap };

std::string to_string(WorkloadKind kind);
// Accepts the snake_case names: uniform_iid, clustered_bursts, zone_collapse,
// oscillation_trap, batch_boundary_trap.
std::optional<WorkloadKind> parse_workload_kind(const std::string& name);

struct GeneratedWorkload {
  GridInstance instance;
  RequestSequence sequence;
};

// ---- benign families -------------------------------------------------------

// n i.i.d. uniform vertices. Throws InfeasibleRequestCount when n exceeds the
// instance's total capacity.
RequestSequence gen_uniform(const GridInstance& instance, std::size_t n, RngSeed seed);

// Bursts of burst_len requests; each burst picks one of `centers` uniformly
// drawn cluster centers and samples N(center, sigma^2 I), rounded to the
// nearest vertex and clamped into the grid.
RequestSequence gen_clustered(const GridInstance& instance, std::size_t n, int centers, double sigma,
                              int burst_len, RngSeed seed);

enum class Placement { kLattice, kRandom };

std::optional<Placement> parse_placement(const std::string& name);

// `count` facilities of equal capacity, either on a near-square coarse
// lattice or at distinct uniformly random vertices.
GridInstance place_facilities(int rows, int cols, int count, int capacity, Placement placement, RngSeed seed);

// ---- adversarial templates -------------------------------------------------

struct ZoneCollapseParams {
  int rows = 9;
  int cols = 9;
  int center_capacity = 2;  // C
  int inner_count = 3;      // m
  int far_offset = 6;       // distance from the central to the far facility
  int region_radius = 2;    // collapse-phase requests stay within this L1 radius
};

// Central facility (id 0, capacity C) and a far facility (id 1, capacity m)
// at exactly far_offset from it. C requests at the center, then m requests
// inside the center's region drawn uniformly from the seeded stream.
// Throws GeometryDoesNotFit when no vertex lies at far_offset or
// far_offset <= region_radius.
GeneratedWorkload gen_zone_collapse(const ZoneCollapseParams& params, RngSeed seed);

struct OscillationTrapParams {
  int rows = 1;
  int cols = 11;
  int separation = 10;  // D, even
  int pairs = 1;
};

// Per pair: unit-capacity F(L) (lower id) and F(R) on one row at distance D,
// R1 at the midpoint then R2 on top of F(L). Pair blocks are packed row-major
// with gaps of more than 2D so no request is ever nearest to another pair.
// The construction is deterministic; seed is accepted for uniformity.
// Throws OddSeparation for odd D, GeometryDoesNotFit when the pairs do not fit.
GeneratedWorkload gen_oscillation_trap(const OscillationTrapParams& params, RngSeed seed);

struct BatchBoundaryTrapParams {
  int rows = 1;
  int cols = 18;
  int delta = 16;       // d(f1, f2)
  int capacity = 2;     // C, every facility
  int group_gap = 0;    // idle time steps after each group of C arrivals
  bool offset_far = false;  // move f2 one row off the line (d(f1, f2) = delta + 1)
};

// Facilities f0 (id 0), f1 (id 1), f2 (id 2) with d(f0, f1) = 1 and
// d(f1, f2) = delta, all of capacity C. Sequence: C requests at f0, then C at
// f1, then C at f1 again, one arrival per step inside each group.
GeneratedWorkload gen_batch_boundary_trap(const BatchBoundaryTrapParams& params, RngSeed seed);

}  // namespace ofa
