#include "ofa/grid.hpp"

#include <cstdlib>
#include <numeric>
#include <string>

#include "ofa/errors.hpp"

namespace ofa {

Distance manhattan_distance(GridPoint a, GridPoint b) noexcept {
  return std::abs(static_cast<Distance>(a.x) - b.x) + std::abs(static_cast<Distance>(a.y) - b.y);
}

GridInstance::GridInstance(int rows, int cols, std::span<const FacilitySpec> facilities)
    : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) {
    throw ConfigInvalid("grid dimensions must be positive, got " + std::to_string(rows) + "x" +
                        std::to_string(cols));
  }
  facilities_.reserve(facilities.size());
  for (const FacilitySpec& spec : facilities) {
    const auto id = static_cast<FacilityId>(facilities_.size());
    if (!contains(spec.location)) {
      throw OutOfBounds("facility " + std::to_string(id) + " at (" + std::to_string(spec.location.x) +
                        "," + std::to_string(spec.location.y) + ") lies outside the grid");
    }
    if (spec.capacity < 0) {
      throw ConfigInvalid("facility " + std::to_string(id) + " has negative capacity");
    }
    facilities_.push_back(Facility{id, spec.location, spec.capacity});
  }
}

std::int64_t GridInstance::total_capacity() const noexcept {
  return std::accumulate(facilities_.begin(), facilities_.end(), std::int64_t{0},
                         [](std::int64_t acc, const Facility& f) { return acc + f.capacity; });
}

bool operator==(const GridInstance& a, const GridInstance& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.facilities_.size() != b.facilities_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.facilities_.size(); ++i) {
    if (a.facilities_[i].location != b.facilities_[i].location ||
        a.facilities_[i].capacity != b.facilities_[i].capacity) {
      return false;
    }
  }
  return true;
}

Distance diameter(const GridInstance& instance) noexcept {
  return static_cast<Distance>(instance.rows() - 1) + (instance.cols() - 1);
}

CapacityLedger::CapacityLedger(const GridInstance& instance) {
  remcap_.reserve(instance.facility_count());
  for (const Facility& f : instance.facilities()) remcap_.push_back(f.capacity);
}

CapacityLedger::CapacityLedger(std::vector<int> remcap) : remcap_(std::move(remcap)) {}

void CapacityLedger::commit(FacilityId id) {
  if (id < 0 || static_cast<std::size_t>(id) >= remcap_.size()) {
    throw PolicyViolation("facility id " + std::to_string(id) + " does not exist");
  }
  int& slot = remcap_[static_cast<std::size_t>(id)];
  if (slot <= 0) throw PolicyViolation("facility " + std::to_string(id) + " is full");
  --slot;
}

std::int64_t total_remaining(const CapacityLedger& ledger) noexcept {
  std::int64_t sum = 0;
  for (int r : ledger.remcap()) sum += r;
  return sum;
}

}  // namespace ofa
