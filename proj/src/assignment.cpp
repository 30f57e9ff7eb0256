#include "ofa/assignment.hpp"

#include <string>

#include "ofa/errors.hpp"

namespace ofa {

RequestSequence RequestSequence::from_points(const std::vector<GridPoint>& points) {
  RequestSequence sequence;
  sequence.requests.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    sequence.requests.push_back(Request{points[i], static_cast<TimeStep>(i + 1)});
  }
  return sequence;
}

void validate_sequence(const GridInstance& instance, const RequestSequence& sequence) {
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const Request& r = sequence.requests[i];
    if (!instance.contains(r.location)) {
      throw OutOfBounds("request " + std::to_string(i) + " at (" + std::to_string(r.location.x) + "," +
                        std::to_string(r.location.y) + ") lies outside the " +
                        std::to_string(instance.rows()) + "x" + std::to_string(instance.cols()) +
                        " grid");
    }
    if (r.arrival_time < 0) {
      throw InfeasibleSequence("request " + std::to_string(i) + " has negative arrival time");
    }
    if (i > 0 && r.arrival_time < sequence.requests[i - 1].arrival_time) {
      throw InfeasibleSequence("arrival times decrease at request " + std::to_string(i));
    }
  }
}

void validate_log(const GridInstance& instance, const RequestSequence& sequence,
                  const AssignmentLog& log, TimeStep max_delay) {
  const auto fail = [](const std::string& what) { throw InvariantViolation(what); };
  if (log.size() != sequence.size()) {
    fail("log has " + std::to_string(log.size()) + " events for " + std::to_string(sequence.size()) +
         " requests");
  }
  std::vector<bool> seen(sequence.size(), false);
  std::vector<int> used(instance.facility_count(), 0);
  Distance total = 0;
  for (const AssignmentEvent& e : log.events()) {
    if (e.request_index >= sequence.size() || seen[e.request_index]) {
      fail("request index " + std::to_string(e.request_index) + " missing or duplicated");
    }
    seen[e.request_index] = true;
    if (e.facility_id < 0 || static_cast<std::size_t>(e.facility_id) >= instance.facility_count()) {
      fail("unknown facility " + std::to_string(e.facility_id));
    }
    const Facility& f = instance.facility(e.facility_id);
    const Request& r = sequence.requests[e.request_index];
    if (++used[static_cast<std::size_t>(e.facility_id)] > f.capacity) {
      fail("facility " + std::to_string(f.id) + " over capacity");
    }
    if (e.location != r.location || e.distance_cost != manhattan_distance(r.location, f.location)) {
      fail("distance mismatch for request " + std::to_string(e.request_index));
    }
    if (e.arrival_time != r.arrival_time || e.commit_time < e.arrival_time) {
      fail("bad timing for request " + std::to_string(e.request_index));
    }
    if (max_delay >= 0 && e.commit_time - e.arrival_time > max_delay) {
      fail("request " + std::to_string(e.request_index) + " waited longer than " +
           std::to_string(max_delay));
    }
    total += e.distance_cost;
  }
  if (total != log.total_cost()) fail("total cost does not match the event sum");
}

}  // namespace ofa
