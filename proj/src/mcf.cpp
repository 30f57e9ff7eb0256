#include "ofa/mcf.hpp"

namespace ofa {

FlowNetwork<Distance> build_batch_network(std::span<const GridPoint> batch, const CapacityLedger& ledger,
                                          const GridInstance& instance) {
  return build_batch_network<Distance>(batch, ledger, instance, [&](std::size_t i, const Facility& f) {
    return manhattan_distance(batch[i], f.location);
  });
}

}  // namespace ofa
