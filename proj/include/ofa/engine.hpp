#pragma once

#include <functional>
#include <vector>

#include "ofa/algorithms.hpp"
#include "ofa/assignment.hpp"
#include "ofa/bmcf.hpp"
#include "ofa/random.hpp"

namespace ofa {

// Decision callback for a fully online policy. Receives the request location
// and the ledger as it stands before the commit.
using OnlineChooser =
    std::function<FacilityId(GridPoint, const CapacityLedger&, const GridInstance&, RngStream&)>;

// Feeds the sequence to the policy one request at a time and commits each
// choice at its arrival time. The random stream is derived from seed with
// the policy stream id, so identical inputs give identical logs.
//
// Throws OutOfBounds / InfeasibleSequence for bad input and PolicyViolation
// if the policy picks a facility without remaining capacity.
AssignmentLog run_online(const GridInstance& instance, const RequestSequence& sequence,
                         const OnlinePolicy& policy, RngSeed seed);

AssignmentLog run_online(const GridInstance& instance, const RequestSequence& sequence,
                         const OnlineChooser& chooser, RngSeed seed);

struct SemiOnlineResult {
  AssignmentLog log;
  std::vector<BatchRecord> batches;

  friend bool operator==(const SemiOnlineResult&, const SemiOnlineResult&) = default;
};

// Buffers arrivals and freezes batches per should_freeze, checking the
// trigger after every arrival and at every deadline in between. Whatever is
// still buffered after the last arrival is flushed at that arrival's time.
SemiOnlineResult run_semi_online(const GridInstance& instance, const RequestSequence& sequence,
                                 const BatchConfig& config, RngSeed seed);

}  // namespace ofa
