#pragma once

#include <cstdint>
#include <vector>

#include "ofa/grid.hpp"

namespace ofa {

using TimeStep = std::int64_t;

struct Request {
  GridPoint location;
  TimeStep arrival_time = 0;

  friend bool operator==(const Request&, const Request&) = default;
};

// Time-ordered online input. Arrival times are non-decreasing.
struct RequestSequence {
  std::vector<Request> requests;

  std::size_t size() const noexcept { return requests.size(); }
  bool empty() const noexcept { return requests.empty(); }

  // Builds a sequence with arrival_time of the i-th point equal to i (1-based).
  static RequestSequence from_points(const std::vector<GridPoint>& points);

  friend bool operator==(const RequestSequence&, const RequestSequence&) = default;
};

struct AssignmentEvent {
  std::size_t request_index = 0;
  GridPoint location;
  FacilityId facility_id = 0;
  Distance distance_cost = 0;
  TimeStep arrival_time = 0;
  TimeStep commit_time = 0;

  friend bool operator==(const AssignmentEvent&, const AssignmentEvent&) = default;
};

// Append-only record of a run, ordered by commit. Committed events are never
// modified.
class AssignmentLog {
 public:
  void append(const AssignmentEvent& event) {
    events_.push_back(event);
    total_cost_ += event.distance_cost;
  }

  const std::vector<AssignmentEvent>& events() const noexcept { return events_; }
  Distance total_cost() const noexcept { return total_cost_; }
  std::size_t size() const noexcept { return events_.size(); }

  friend bool operator==(const AssignmentLog&, const AssignmentLog&) = default;

 private:
  std::vector<AssignmentEvent> events_;
  Distance total_cost_ = 0;
};

// Checks arrival ordering and that every location lies inside the grid.
// Throws OutOfBounds or InfeasibleSequence.
void validate_sequence(const GridInstance& instance, const RequestSequence& sequence);

// Full audit of a finished log against its inputs: one event per request,
// distances recomputed, capacity never exceeded on any prefix, commit not
// before arrival and, when max_delay is non-negative, not after arrival +
// max_delay. Throws InvariantViolation describing the first failure.
void validate_log(const GridInstance& instance, const RequestSequence& sequence,
                  const AssignmentLog& log, TimeStep max_delay = -1);

}  // namespace ofa
