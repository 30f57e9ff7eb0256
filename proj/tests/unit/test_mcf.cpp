#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "ofa/errors.hpp"
#include "ofa/mcf.hpp"
#include "ofa/rational.hpp"
#include "oracles.hpp"

using namespace ofa;

namespace {

GridInstance worked_instance() {
  const std::vector<FacilitySpec> specs{{{1, 1}, 2}, {{3, 3}, 1}};
  return GridInstance(3, 3, specs);
}

const std::vector<GridPoint> kWorkedBatch{{1, 2}, {2, 2}, {3, 2}};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Built {
  GridInstance instance;
  std::vector<GridPoint> points;
};

Built build(const test::RandomCase& c) {
  std::vector<FacilitySpec> specs;
  for (std::size_t f = 0; f < c.sites.size(); ++f) specs.push_back({c.sites[f], c.caps[f]});
  return {GridInstance(c.rows, c.cols, specs), c.points};
}

// Bellman-Ford over the residual graph; true if some cycle has negative cost.
template <typename Cost>
bool residual_has_negative_cycle(const FlowNetwork<Cost>& net, const FlowSolution<Cost>& sol) {
  struct Edge {
    int from, to;
    Cost cost;
  };
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < net.arcs().size(); ++a) {
    const auto& arc = net.arcs()[a];
    if (sol.arc_flows[a] < arc.capacity) edges.push_back({arc.from, arc.to, arc.unit_cost});
    if (sol.arc_flows[a] > 0) edges.push_back({arc.to, arc.from, Cost(-arc.unit_cost)});
  }
  const int n = net.node_count();
  std::vector<Cost> dist(static_cast<std::size_t>(n), Cost{});  // virtual root to every node
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (const Edge& e : edges) {
      if (dist[static_cast<std::size_t>(e.from)] + e.cost < dist[static_cast<std::size_t>(e.to)]) {
        dist[static_cast<std::size_t>(e.to)] = dist[static_cast<std::size_t>(e.from)] + e.cost;
        changed = true;
      }
    }
    if (!changed) return false;
  }
  return true;
}

template <typename Cost>
void check_flow_feasible(const FlowNetwork<Cost>& net, const FlowSolution<Cost>& sol) {
  std::vector<std::int64_t> balance(static_cast<std::size_t>(net.node_count()), 0);
  Cost recomputed{};
  for (std::size_t a = 0; a < net.arcs().size(); ++a) {
    const auto& arc = net.arcs()[a];
    CHECK(sol.arc_flows[a] >= 0);
    CHECK(sol.arc_flows[a] <= arc.capacity);
    balance[static_cast<std::size_t>(arc.from)] -= sol.arc_flows[a];
    balance[static_cast<std::size_t>(arc.to)] += sol.arc_flows[a];
    recomputed += arc.unit_cost * sol.arc_flows[a];
  }
  for (int v = 0; v < net.node_count(); ++v) {
    if (v == net.source() || v == net.sink()) continue;
    CHECK(balance[static_cast<std::size_t>(v)] == 0);
  }
  CHECK(balance[static_cast<std::size_t>(net.sink())] == sol.flow_value);
  CHECK(recomputed == sol.total_cost);
}

}  // namespace

TEST_CASE("worked example network arcs") {
  const GridInstance g = worked_instance();
  const auto net = build_batch_network(kWorkedBatch, CapacityLedger(g), g);
  std::map<std::pair<std::string, std::string>, std::pair<std::int64_t, Distance>> arcs;
  for (const auto& a : net.arcs()) arcs[{net.node_name(a.from), net.node_name(a.to)}] = {a.capacity, a.unit_cost};
  CHECK(arcs.size() == 11);
  CHECK(arcs[{"u1", "f0"}].second == 1);
  CHECK(arcs[{"u1", "f1"}].second == 3);
  CHECK(arcs[{"u2", "f0"}].second == 2);
  CHECK(arcs[{"u2", "f1"}].second == 2);
  CHECK(arcs[{"u3", "f0"}].second == 3);
  CHECK(arcs[{"u3", "f1"}].second == 1);
  CHECK(arcs[{"f0", "t"}] == std::pair<std::int64_t, Distance>{2, 0});
  CHECK(arcs[{"f1", "t"}] == std::pair<std::int64_t, Distance>{1, 0});
  for (int u = 1; u <= 3; ++u) CHECK(arcs[{"s", "u" + std::to_string(u)}] == std::pair<std::int64_t, Distance>{1, 0});
}

TEST_CASE("worked example solve matches the golden tables") {
  const GridInstance g = worked_instance();
  const auto net = build_batch_network(kWorkedBatch, CapacityLedger(g), g);
  const auto sol = solve_min_cost_flow(net, 3);
  CHECK(sol.total_cost == 4);
  CHECK(sol.assignment == std::vector<FacilityId>{0, 0, 1});
  check_flow_feasible(net, sol);
  CHECK(format_network_table(net) + format_flow_table(net, sol) ==
        read_file(std::string(OFA_TEST_GOLDEN_DIR) + "/worked_example_tables.txt"));
}

TEST_CASE("every feasible worked example assignment costs at least 4") {
  const test::EnumeratedOptimum best = test::enumerate_optimum(kWorkedBatch, {{1, 1}, {3, 3}}, {2, 1});
  CHECK(best.cost == 4);
  int families = 0;
  test::enumerate_assignments(3, {2, 1}, [&](const std::vector<int>& map) {
    Distance cost = 0;
    for (std::size_t i = 0; i < 3; ++i) cost += test::l1(kWorkedBatch[i], map[i] == 0 ? GridPoint{1, 1} : GridPoint{3, 3});
    CHECK(cost >= 4);
    ++families;
  });
  CHECK(families == 3);
}

TEST_CASE("minimal and degenerate networks") {
  const std::vector<FacilitySpec> one{{{2, 2}, 1}};
  const GridInstance g(3, 3, one);
  const std::vector<GridPoint> single{{1, 1}};
  const auto net = build_batch_network(single, CapacityLedger(g), g);
  CHECK(net.arcs().size() == 3);

  const auto zero = solve_min_cost_flow(net, 0);
  CHECK(zero.total_cost == 0);
  CHECK(zero.flow_value == 0);
  CHECK(std::all_of(zero.arc_flows.begin(), zero.arc_flows.end(), [](auto f) { return f == 0; }));

  const std::vector<GridPoint> two{{1, 1}, {3, 3}};
  const auto over = build_batch_network(two, CapacityLedger(g), g);
  CHECK_THROWS_AS(solve_min_cost_flow(over, 2), InfeasibleFlow);
}

TEST_CASE("exhausted facilities receive no arcs") {
  const GridInstance g = worked_instance();
  const CapacityLedger ledger(std::vector<int>{0, 1});
  const auto net = build_batch_network(std::span<const GridPoint>(kWorkedBatch.data(), 1), ledger, g);
  for (const auto& a : net.arcs()) {
    CHECK(a.to != net.facility_node(0));
    CHECK(a.from != net.facility_node(0));
  }
}

TEST_CASE("random networks agree with exhaustive enumeration") {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const test::RandomCase c = test::random_case(seed, 5, 3, 6, 3);
    const Built b = build(c);
    const CapacityLedger ledger(b.instance);
    const auto net = build_batch_network(b.points, ledger, b.instance);
    const auto sol = solve_min_cost_flow(net, static_cast<std::int64_t>(b.points.size()));
    const auto oracle = test::enumerate_optimum(c.points, c.sites, c.caps);
    REQUIRE(sol.total_cost == oracle.cost);
    check_flow_feasible(net, sol);
    CHECK_FALSE(residual_has_negative_cycle(net, sol));

    std::vector<int> load(c.caps.size(), 0);
    Distance resum = 0;
    for (std::size_t i = 0; i < b.points.size(); ++i) {
      const int f = sol.assignment[i];
      REQUIRE(f >= 0);
      ++load[static_cast<std::size_t>(f)];
      resum += test::l1(b.points[i], c.sites[static_cast<std::size_t>(f)]);
    }
    CHECK(resum == sol.total_cost);
    for (std::size_t f = 0; f < load.size(); ++f) CHECK(load[f] <= c.caps[f]);
  }
}

TEST_CASE("rational costs solve exactly") {
  for (std::uint64_t seed = 1000; seed < 1100; ++seed) {
    const test::RandomCase c = test::random_case(seed, 5, 3, 5, 3);
    const Built b = build(c);
    const CapacityLedger ledger(b.instance);
    const auto net = build_batch_network<Rational>(b.points, ledger, b.instance, [&](std::size_t i, const Facility& f) {
      return Rational(test::l1(b.points[i], f.location)) + Rational(1, 3 + f.id);
    });
    const auto sol = solve_min_cost_flow(net, static_cast<std::int64_t>(b.points.size()));
    Rational best = -1;
    test::enumerate_assignments(b.points.size(), c.caps, [&](const std::vector<int>& map) {
      Rational cost = 0;
      for (std::size_t i = 0; i < map.size(); ++i)
        cost += Rational(test::l1(b.points[i], c.sites[static_cast<std::size_t>(map[i])])) + Rational(1, 3 + map[i]);
      if (best < 0 || cost < best) best = cost;
    });
    CHECK(sol.total_cost == best);
    CHECK_FALSE(residual_has_negative_cycle(net, sol));
  }
}

TEST_CASE("permuting the batch preserves cost and the location-to-facility multiset") {
  for (std::uint64_t seed = 2000; seed < 2150; ++seed) {
    const test::RandomCase c = test::random_case(seed, 5, 3, 6, 3);
    const Built b = build(c);
    const CapacityLedger ledger(b.instance);
    const auto oracle = test::enumerate_optimum(c.points, c.sites, c.caps);

    std::vector<GridPoint> shuffled = b.points;
    RngStream rng(RngSeed{seed});
    for (std::size_t i = shuffled.size(); i > 1; --i) std::swap(shuffled[i - 1], shuffled[rng.uniform_below(i)]);

    for (const std::vector<GridPoint>* pts : std::initializer_list<const std::vector<GridPoint>*>{&b.points, &shuffled}) {
      const auto sol = solve_min_cost_flow(build_batch_network(*pts, ledger, b.instance),
                                           static_cast<std::int64_t>(pts->size()));
      CHECK(sol.total_cost == oracle.cost);
      std::multiset<std::pair<GridPoint, int>> pairs;
      for (std::size_t i = 0; i < pts->size(); ++i) pairs.emplace((*pts)[i], sol.assignment[i]);
      // Distinct optima may exist; the returned one must be among them.
      CHECK(oracle.optimal_pair_sets.count(pairs) == 1);
    }
    const auto a = solve_min_cost_flow(build_batch_network(b.points, ledger, b.instance),
                                       static_cast<std::int64_t>(b.points.size()));
    const auto s = solve_min_cost_flow(build_batch_network(shuffled, ledger, b.instance),
                                       static_cast<std::int64_t>(b.points.size()));
    if (oracle.optimal_pair_sets.size() == 1) {
      std::multiset<std::pair<GridPoint, int>> pa, ps;
      for (std::size_t i = 0; i < b.points.size(); ++i) {
        pa.emplace(b.points[i], a.assignment[i]);
        ps.emplace(shuffled[i], s.assignment[i]);
      }
      CHECK(pa == ps);
    }
  }
}
