#pragma once

// Exact min-cost flow for the three-layer transportation networks used by
// batch assignment and the offline optimum:
//
//   source -> request (cap 1, cost 0)
//   request -> facility (cap 1, cost = arc cost)
//   facility -> sink (cap = usable capacity, cost 0 or a depth penalty)
//
// Solved by successive shortest paths with node potentials. Costs may be
// integral (Distance) or exact rationals (Rational); the solver is templated
// on the cost type so neither case pays for the other.

#include <cstdint>
#include <functional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ofa/errors.hpp"
#include "ofa/grid.hpp"

namespace ofa {

template <typename Cost>
struct FlowArc {
  int from = 0;
  int to = 0;
  std::int64_t capacity = 0;
  Cost unit_cost{};
};

// Node layout: 0 = source, 1..n = requests, n+1..n+F = facilities (one per
// instance facility, by id), n+F+1 = sink.
template <typename Cost>
class FlowNetwork {
 public:
  FlowNetwork(std::size_t request_count, std::size_t facility_count)
      : requests_(request_count), facilities_(facility_count) {}

  int source() const noexcept { return 0; }
  int sink() const noexcept { return static_cast<int>(requests_ + facilities_ + 1); }
  int request_node(std::size_t i) const noexcept { return static_cast<int>(1 + i); }
  int facility_node(FacilityId f) const noexcept { return static_cast<int>(1 + requests_) + f; }
  int node_count() const noexcept { return sink() + 1; }

  std::size_t request_count() const noexcept { return requests_; }
  std::size_t facility_count() const noexcept { return facilities_; }

  bool is_request_node(int v) const noexcept { return v >= 1 && v <= static_cast<int>(requests_); }
  bool is_facility_node(int v) const noexcept {
    return v > static_cast<int>(requests_) && v < sink();
  }
  std::size_t request_of(int v) const noexcept { return static_cast<std::size_t>(v - 1); }
  FacilityId facility_of(int v) const noexcept { return v - 1 - static_cast<int>(requests_); }

  std::size_t add_arc(int from, int to, std::int64_t capacity, Cost unit_cost) {
    arcs_.push_back(FlowArc<Cost>{from, to, capacity, std::move(unit_cost)});
    return arcs_.size() - 1;
  }

  const std::vector<FlowArc<Cost>>& arcs() const noexcept { return arcs_; }

  // "s", "t", "u3" (1-based request), "f0" (facility id).
  std::string node_name(int v) const {
    if (v == source()) return "s";
    if (v == sink()) return "t";
    if (is_request_node(v)) return "u" + std::to_string(request_of(v) + 1);
    return "f" + std::to_string(facility_of(v));
  }

 private:
  std::size_t requests_;
  std::size_t facilities_;
  std::vector<FlowArc<Cost>> arcs_;
};

template <typename Cost>
struct FlowSolution {
  std::vector<std::int64_t> arc_flows;  // parallel to network.arcs()
  Cost total_cost{};
  std::int64_t flow_value = 0;
  std::vector<FacilityId> assignment;  // per request; -1 when unassigned
};

// Builds the batch network over facilities with remcap > 0. Exhausted
// facilities keep their node but get no arcs. cost_fn(request_index, facility)
// prices the middle layer.
template <typename Cost, typename CostFn>
FlowNetwork<Cost> build_batch_network(std::span<const GridPoint> batch, const CapacityLedger& ledger,
                                      const GridInstance& instance, CostFn&& cost_fn) {
  FlowNetwork<Cost> network(batch.size(), instance.facility_count());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    network.add_arc(network.source(), network.request_node(i), 1, Cost{});
  }
  for (std::size_t i = 0; i < batch.size(); ++i) {
    for (const Facility& f : instance.facilities()) {
      if (!ledger.available(f.id)) continue;
      network.add_arc(network.request_node(i), network.facility_node(f.id), 1, cost_fn(i, f));
    }
  }
  for (const Facility& f : instance.facilities()) {
    if (!ledger.available(f.id)) continue;
    network.add_arc(network.facility_node(f.id), network.sink(), ledger.remaining(f.id), Cost{});
  }
  return network;
}

// Default pricing: Manhattan distance.
FlowNetwork<Distance> build_batch_network(std::span<const GridPoint> batch, const CapacityLedger& ledger,
                                          const GridInstance& instance);

namespace detail {

struct ResidualEdge {
  int to;
  std::size_t arc;  // index into network arcs
  bool forward;
};

}  // namespace detail

// Sends required_flow units from source to sink at minimum total cost.
// All arc costs must be non-negative. Throws InfeasibleFlow if the maximum
// flow is smaller than required_flow.
template <typename Cost>
FlowSolution<Cost> solve_min_cost_flow(const FlowNetwork<Cost>& network, std::int64_t required_flow) {
  const auto& arcs = network.arcs();
  const int n = network.node_count();
  const int s = network.source();
  const int t = network.sink();

  std::vector<std::vector<detail::ResidualEdge>> adjacency(static_cast<std::size_t>(n));
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    if (arcs[a].unit_cost < Cost{}) throw InfeasibleFlow("negative arc cost");
    adjacency[static_cast<std::size_t>(arcs[a].from)].push_back({arcs[a].to, a, true});
    adjacency[static_cast<std::size_t>(arcs[a].to)].push_back({arcs[a].from, a, false});
  }

  FlowSolution<Cost> solution;
  solution.arc_flows.assign(arcs.size(), 0);
  std::vector<Cost> potential(static_cast<std::size_t>(n), Cost{});
  std::vector<Cost> dist(static_cast<std::size_t>(n));
  std::vector<bool> reached(static_cast<std::size_t>(n));
  std::vector<bool> settled(static_cast<std::size_t>(n));
  std::vector<const detail::ResidualEdge*> parent(static_cast<std::size_t>(n));
  std::vector<int> parent_node(static_cast<std::size_t>(n));

  const auto residual = [&](const detail::ResidualEdge& e) {
    return e.forward ? arcs[e.arc].capacity - solution.arc_flows[e.arc] : solution.arc_flows[e.arc];
  };
  const auto reduced_cost = [&](int from, const detail::ResidualEdge& e) {
    const Cost& c = arcs[e.arc].unit_cost;
    return (e.forward ? c : Cost(-c)) + potential[static_cast<std::size_t>(from)] -
           potential[static_cast<std::size_t>(e.to)];
  };

  using Entry = std::pair<Cost, int>;
  while (solution.flow_value < required_flow) {
    std::fill(reached.begin(), reached.end(), false);
    std::fill(settled.begin(), settled.end(), false);
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
    dist[static_cast<std::size_t>(s)] = Cost{};
    reached[static_cast<std::size_t>(s)] = true;
    heap.emplace(Cost{}, s);
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      const auto vi = static_cast<std::size_t>(v);
      if (settled[vi] || d != dist[vi]) continue;
      settled[vi] = true;
      if (v == t) break;
      for (const detail::ResidualEdge& e : adjacency[vi]) {
        if (residual(e) <= 0) continue;
        const auto wi = static_cast<std::size_t>(e.to);
        if (settled[wi]) continue;
        Cost candidate = d + reduced_cost(v, e);
        if (!reached[wi] || candidate < dist[wi]) {
          reached[wi] = true;
          dist[wi] = candidate;
          parent[wi] = &e;
          parent_node[wi] = v;
          heap.emplace(std::move(candidate), e.to);
        }
      }
    }
    if (!settled[static_cast<std::size_t>(t)]) {
      throw InfeasibleFlow("maximum flow " + std::to_string(solution.flow_value) + " is below the required " +
                           std::to_string(required_flow));
    }

    const Cost dist_t = dist[static_cast<std::size_t>(t)];
    for (int v = 0; v < n; ++v) {
      const auto vi = static_cast<std::size_t>(v);
      potential[vi] += settled[vi] ? dist[vi] : dist_t;
    }

    std::int64_t push = required_flow - solution.flow_value;
    for (int v = t; v != s; v = parent_node[static_cast<std::size_t>(v)]) {
      push = std::min(push, residual(*parent[static_cast<std::size_t>(v)]));
    }
    for (int v = t; v != s; v = parent_node[static_cast<std::size_t>(v)]) {
      const detail::ResidualEdge& e = *parent[static_cast<std::size_t>(v)];
      solution.arc_flows[e.arc] += e.forward ? push : -push;
    }
    solution.flow_value += push;
  }

  solution.assignment.assign(network.request_count(), -1);
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const std::int64_t flow = solution.arc_flows[a];
    if (flow == 0) continue;
    solution.total_cost += arcs[a].unit_cost * flow;
    if (network.is_request_node(arcs[a].from) && network.is_facility_node(arcs[a].to)) {
      solution.assignment[network.request_of(arcs[a].from)] = network.facility_of(arcs[a].to);
    }
  }
  return solution;
}

// Two-column tables for golden comparison: "Arc | Capacity | Cost" over every
// arc, then "Edge | Flow" over the arcs carrying flow.
template <typename Cost>
std::string format_network_table(const FlowNetwork<Cost>& network) {
  std::ostringstream out;
  out << "Arc | Capacity | Cost\n";
  for (const auto& arc : network.arcs()) {
    out << "(" << network.node_name(arc.from) << "->" << network.node_name(arc.to) << ") | " << arc.capacity
        << " | " << arc.unit_cost << "\n";
  }
  return out.str();
}

template <typename Cost>
std::string format_flow_table(const FlowNetwork<Cost>& network, const FlowSolution<Cost>& solution) {
  std::ostringstream out;
  out << "Edge | Flow\n";
  for (std::size_t a = 0; a < network.arcs().size(); ++a) {
    if (solution.arc_flows[a] == 0) continue;
    const auto& arc = network.arcs()[a];
    out << "(" << network.node_name(arc.from) << "->" << network.node_name(arc.to) << ") | "
        << solution.arc_flows[a] << "\n";
  }
  out << "Total cost = " << solution.total_cost << "\n";
  return out.str();
}

}  // namespace ofa
