#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ofa {

using Distance = std::int64_t;
using FacilityId = int;

// Grid vertex, 1-based: x is the column, y is the row.
struct GridPoint {
  int x = 1;
  int y = 1;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

Distance manhattan_distance(GridPoint a, GridPoint b) noexcept;

struct Facility {
  FacilityId id = 0;
  GridPoint location;
  int capacity = 0;
};

struct FacilitySpec {
  GridPoint location;
  int capacity = 0;
};

// The r x c grid with its facilities. Immutable after construction; ids are
// assigned densely in list order.
class GridInstance {
 public:
  // Throws ConfigInvalid for a non-positive dimension or negative capacity and
  // OutOfBounds for a facility outside the grid.
  GridInstance(int rows, int cols, std::span<const FacilitySpec> facilities);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::span<const Facility> facilities() const noexcept { return facilities_; }
  const Facility& facility(FacilityId id) const { return facilities_.at(static_cast<std::size_t>(id)); }
  std::size_t facility_count() const noexcept { return facilities_.size(); }

  bool contains(GridPoint p) const noexcept {
    return p.x >= 1 && p.x <= cols_ && p.y >= 1 && p.y <= rows_;
  }

  std::int64_t total_capacity() const noexcept;

  friend bool operator==(const GridInstance& a, const GridInstance& b);

 private:
  int rows_;
  int cols_;
  std::vector<Facility> facilities_;
};

// (rows - 1) + (cols - 1): the largest L1 distance between two vertices.
Distance diameter(const GridInstance& instance) noexcept;

// Remaining capacity per facility. Owned by a single run.
class CapacityLedger {
 public:
  explicit CapacityLedger(const GridInstance& instance);
  explicit CapacityLedger(std::vector<int> remcap);

  int remaining(FacilityId id) const { return remcap_.at(static_cast<std::size_t>(id)); }
  bool available(FacilityId id) const { return remaining(id) > 0; }
  std::span<const int> remcap() const noexcept { return remcap_; }
  std::size_t size() const noexcept { return remcap_.size(); }

  // Consumes one unit. Throws PolicyViolation if the facility is already full.
  void commit(FacilityId id);

 private:
  std::vector<int> remcap_;
};

std::int64_t total_remaining(const CapacityLedger& ledger) noexcept;

}  // namespace ofa
