// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ofa/adversary.hpp"
#include "ofa/algorithms.hpp"
#include "ofa/engine.hpp"
#include "ofa/errors.hpp"
#include "ofa/harness.hpp"
#include "ofa/mcf.hpp"
#include "ofa/opt_oracle.hpp"

using namespace ofa;

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

const std::vector<std::string> kDefaultGrid{"worked_example", "uniform", "clustered", "zone_collapse",
                                            "oscillation_trap", "batch_boundary_trap"};

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, double a) {
  char buffer[96];
  std::snprintf(buffer, sizeof(buffer), pattern, a);
  return buffer;
}

std::string config_path(const std::string& name) { return std::string(OFA_CONFIG_DIR) + "/" + name + ".json"; }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

GridPoint random_point(RngStream& rng, int rows, int cols) {
  return {static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(cols))) + 1,
          static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(rows))) + 1};
}

// ---- criteria --------------------------------------------------------------

Outcome worked_example() {
  Outcome o;
  const auto start = Clock::now();
  const std::vector<FacilitySpec> specs{{{1, 1}, 2}, {{3, 3}, 1}};
  const GridInstance g(3, 3, specs);
  const auto seq = RequestSequence::from_points({{1, 2}, {2, 2}, {3, 2}});
  for (TimeStep tau : {2, 3, 10}) {
    const SemiOnlineResult run = run_semi_online(g, seq, BatchConfig{3, tau}, RngSeed{0});
    std::vector<FacilityId> chosen(3, -1);
    for (const auto& e : run.log.events()) chosen[e.request_index] = e.facility_id;
    o.require(run.batches.size() == 1, "expected a single batch");
    o.require(chosen == std::vector<FacilityId>{0, 0, 1}, "assignment differs from {u1->fA, u2->fA, u3->fB}");
    o.require(!run.batches.empty() && run.batches[0].batch_cost == 4, "batch cost is not 4");
  }
  const Distance opt = offline_opt(g, seq).total_cost;
  o.require(opt == 4, "offline optimum " + std::to_string(opt) + " != 4");
  const double elapsed = seconds_since(start);
  o.require(elapsed < 1.0, fmt("took %.3f s", elapsed));
  if (o.pass) o.detail = "BMCF batch cost 4, OPT 4" + fmt(", %.3f s", elapsed);
  return o;
}

Outcome flow_oracle() {
  Outcome o;
  const auto start = Clock::now();
  int instances = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    RngStream rng(mix_seed(RngSeed{0xACCE97}, seed));
    const int rows = 1 + static_cast<int>(rng.uniform_below(5));
    const int cols = 1 + static_cast<int>(rng.uniform_below(5));
    const int count = 1 + static_cast<int>(rng.uniform_below(3));
    std::vector<FacilitySpec> specs;
    int capacity = 0;
    for (int f = 0; f < count; ++f) {
      specs.push_back({random_point(rng, rows, cols), static_cast<int>(rng.uniform_below(4))});
      capacity += specs.back().capacity;
    }
    if (capacity == 0) continue;
    const int n = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(std::min(6, capacity))));
    std::vector<GridPoint> points;
    for (int i = 0; i < n; ++i) points.push_back(random_point(rng, rows, cols));
    const GridInstance g(rows, cols, specs);
    const auto solution = solve_min_cost_flow(build_batch_network(points, CapacityLedger(g), g), n);
    const Distance brute = brute_force_opt(g, RequestSequence::from_points(points)).total_cost;
    o.require(solution.total_cost == brute, "seed " + std::to_string(seed) + ": flow " +
                                                std::to_string(solution.total_cost) + " vs enumeration " +
                                                std::to_string(brute));
    ++instances;
  }
  const double elapsed = seconds_since(start);
  o.require(instances >= 200, "only " + std::to_string(instances) + " instances");
  o.require(elapsed < 10.0, fmt("took %.3f s", elapsed));
  if (o.pass) o.detail = std::to_string(instances) + " instances match enumeration" + fmt(", %.3f s", elapsed);
  return o;
}

Outcome proposition_one() {
  Outcome o;
  RngStream rng(RngSeed{0x9120});
  int decisions = 0;
  for (int i = 0; i < 1000; ++i) {
    const int rows = 1 + static_cast<int>(rng.uniform_below(15));
    const int cols = 1 + static_cast<int>(rng.uniform_below(15));
    const int count = 1 + static_cast<int>(rng.uniform_below(8));
    const int capacity = 1 + static_cast<int>(rng.uniform_below(10));
    std::vector<FacilitySpec> specs;
    for (int f = 0; f < count; ++f) specs.push_back({random_point(rng, rows, cols), capacity});
    const GridInstance g(rows, cols, specs);
    const CapacityLedger ledger(g);
    const GridPoint u = random_point(rng, rows, cols);
    const FacilityId nearest = nearest_available(u, ledger, g);
    for (const char* alpha : {"0.5", "1", "5"}) {
      const FacilityId cs = cs_voronoi(u, ledger, g, CsVoronoiConfig{parse_decimal(alpha), Smoothing::kNone});
      o.require(cs == nearest, "decision " + std::to_string(i) + " alpha " + alpha + " disagrees");
    }
    ++decisions;
  }
  if (o.pass) o.detail = std::to_string(decisions) + " decisions x alpha {0.5, 1, 5}, all identical";
  return o;
}

Outcome oscillation_trap() {
  Outcome o;
  const auto start = Clock::now();
  const GeneratedWorkload w = gen_oscillation_trap({1, 11, 10, 1}, RngSeed{0});
  const Distance opt = offline_opt(w.instance, w.sequence).total_cost;
  o.require(opt == 5, "offline optimum " + std::to_string(opt) + " != 5");
  o.require(brute_force_opt(w.instance, w.sequence).total_cost == 5, "enumeration disagrees with OPT = 5");

  ExperimentConfig config = read_experiment_config(config_path("oscillation_trap"));
  std::vector<PolicySpec> only;
  for (const PolicySpec& p : config.policies) {
    if (p.label == "rgreedy") only.push_back(p);
  }
  config.policies = only;
  o.require(config.policies.size() == 1, "oscillation config lacks an rgreedy policy");
  o.require(config.trials >= 10000, "oscillation config has fewer than 10000 trials");
  if (!o.pass) return o;
  const ExperimentResult r = run_experiment(config);
  const TrialSummary& s = r.summaries.front();
  const double elapsed = seconds_since(start);
  o.require(s.mean_opt == 5.0, "trial OPT differs from 5");
  o.require(std::abs(s.cost.mean - 10.0) <= 0.2, fmt("mean cost %.4f outside 10 +- 2%%", s.cost.mean));
  o.require(!s.mean_ratio.unbounded && std::abs(s.mean_ratio.value - 2.0) <= 0.05,
            fmt("mean ratio %.4f outside 2.0 +- 0.05", s.mean_ratio.value));
  o.require(elapsed < 5.0, fmt("took %.3f s", elapsed));
  if (o.pass) {
    o.detail = "OPT 5, " + std::to_string(s.trials) + " trials: mean cost" + fmt(" %.4f,", s.cost.mean) +
               fmt(" mean ratio %.4f,", s.mean_ratio.value) + fmt(" %.3f s", elapsed);
  }
  return o;
}

Outcome lemma_one() {
  Outcome o;
  const GeneratedWorkload w = gen_batch_boundary_trap({1, 18, 16, 2, 0, false}, RngSeed{0});
  const SemiOnlineResult run = run_semi_online(w.instance, w.sequence, BatchConfig{2, 2}, RngSeed{0});
  o.require(run.batches.size() == 3, "expected prelude + two batches, got " + std::to_string(run.batches.size()));
  if (!o.pass) return o;
  o.require(run.batches[1].batch_cost == 0, "batch 1 cost " + std::to_string(run.batches[1].batch_cost));
  o.require(run.batches[2].batch_cost == 32, "batch 2 cost " + std::to_string(run.batches[2].batch_cost));
  const Distance opt = offline_opt(w.instance, w.sequence).total_cost;
  const CompetitiveRatio ratio = competitive_ratio(static_cast<double>(run.log.total_cost()), opt);
  if (o.pass) {
    o.detail = "batch costs 0/0/32; oracle OPT " + std::to_string(opt) + ", ratio " + ratio.to_string() +
               " (reported, not asserted)";
  }
  return o;
}

Outcome diameters() {
  Outcome o;
  RngStream rng(RngSeed{0xD1A});
  for (int i = 0; i < 20; ++i) {
    const int r = 1 + static_cast<int>(rng.uniform_below(50));
    const int c = 1 + static_cast<int>(rng.uniform_below(50));
    const GridInstance g(r, c, std::vector<FacilitySpec>{});
    const std::string dims = std::to_string(r) + "x" + std::to_string(c);
    o.require(diameter(g) == (r - 1) + (c - 1), dims + ": formula mismatch");
    o.require(diameter(g) == manhattan_distance({1, 1}, {c, r}), dims + ": corner distance differs");
    Distance best = 0;
    for (int a = 0; a < r * c; ++a)
      for (int b = a + 1; b < r * c; ++b)
        best = std::max(best, manhattan_distance({a % c + 1, a / c + 1}, {b % c + 1, b / c + 1}));
    o.require(diameter(g) == best, dims + ": brute-force max differs");
  }
  if (o.pass) o.detail = "20 random grids up to 50x50, formula and brute-force pairwise max agree";
  return o;
}

// Independent audit of every run in the default grid.
Outcome safety() {
  Outcome o;
  std::size_t runs = 0;
  std::size_t events = 0;
  for (const std::string& name : kDefaultGrid) {
    const ExperimentConfig config = read_experiment_config(config_path(name));
    const ExperimentResult r = run_experiment(config);
    std::map<std::size_t, Distance> opt_by_trial;
    for (std::size_t k = 0; k < r.runs.size(); ++k) {
      const RunRecord& run = r.runs[k];
      const PolicySpec& policy = config.policies[k % config.policies.size()];
      const RngSeed trial_seed = mix_seed(config.base_seed, run.trial);
      const GeneratedWorkload w = generate_workload(config.workload, config.instance, mix_seed(trial_seed, kWorkloadStream));
      const std::string where = name + "/" + policy.label + " trial " + std::to_string(run.trial);
      o.require(fingerprint(w.sequence) == run.sequence_fingerprint, where + ": sequence mismatch");

      std::vector<int> remcap;
      for (const Facility& f : w.instance.facilities()) remcap.push_back(f.capacity);
      const auto* batch = std::get_if<BatchConfig>(&policy.policy);
      for (const AssignmentEvent& e : run.log.events()) {
        int& left = remcap.at(static_cast<std::size_t>(e.facility_id));
        o.require(left > 0, where + ": assignment to a full facility");
        --left;
        const TimeStep bound = batch ? batch->delay_budget : 0;
        o.require(e.commit_time >= e.arrival_time && e.commit_time - e.arrival_time <= bound,
                  where + ": delay bound exceeded");
        ++events;
      }
      o.require(run.log.size() == w.sequence.size(), where + ": missing events");
      if (!opt_by_trial.count(run.trial)) opt_by_trial[run.trial] = offline_opt(w.instance, w.sequence).total_cost;
      o.require(opt_by_trial[run.trial] <= run.log.total_cost(), where + ": OPT above cost");
      ++runs;
    }
  }
  if (o.pass) o.detail = std::to_string(runs) + " runs, " + std::to_string(events) + " events, zero violations";
  return o;
}

std::map<std::string, std::map<std::string, std::string>> parse_summary(const std::string& text) {
  std::map<std::string, std::map<std::string, std::string>> rows;
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  const auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream fields(s);
    while (std::getline(fields, field, ',')) out.push_back(field);
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header.empty()) {
      header = split(line);
      continue;
    }
    // Policy labels contain commas inside parentheses; rebuild them.
    std::vector<std::string> raw = split(line);
    std::vector<std::string> cols;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (!cols.empty() && std::count(cols.back().begin(), cols.back().end(), '(') >
                               std::count(cols.back().begin(), cols.back().end(), ')')) {
        cols.back() += "," + raw[i];
      } else {
        cols.push_back(raw[i]);
      }
    }
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size() && i < cols.size(); ++i) row[header[i]] = cols[i];
    rows[row["policy"]] = row;
  }
  return rows;
}

Outcome mitigation() {
  Outcome o;
  std::string detail;
  for (const std::string& name : {std::string("zone_collapse"), std::string("clustered")}) {
    const ExperimentConfig config = read_experiment_config(config_path(name));
    o.require(config.trials >= 100, name + " config has fewer than 100 trials");
    const std::string measured = format_summary_csv(run_experiment(config));
    const std::string golden = read_file(std::string(OFA_GOLDEN_DIR) + "/mitigation/" + name + "_summary.csv");
    o.require(measured == golden, name + ": summary differs from the recorded golden summary");

    auto rows = parse_summary(measured);
    const std::string cs = rows["csvoronoi(alpha=1)"]["mean_bo"];
    const std::string damped = rows["csvoronoi(alpha=1,damped)"]["mean_bo"];
    const std::string base = rows["bmcf(B=4,tau=3)"]["mean_oc"] + rows["bmcf(B=8,tau=4)"]["mean_oc"];
    const std::string h1 = rows["bmcf(B=4,tau=3,rho=1)"]["mean_oc"] + rows["bmcf(B=8,tau=4,rho=1)"]["mean_oc"];
    o.require(!cs.empty() && !damped.empty() && !base.empty() && !h1.empty(), name + ": policy rows missing");
    if (!o.pass) return o;
    const double bo_plain = std::stod(cs), bo_damped = std::stod(damped);
    const double oc_base = std::stod(base), oc_h1 = std::stod(h1);
    o.require(bo_damped <= bo_plain, name + fmt(": damped bo %.6f", bo_damped) + fmt(" > plain %.6f", bo_plain));
    o.require(oc_h1 <= oc_base, name + fmt(": H1 oc %.6f", oc_h1) + fmt(" > baseline %.6f", oc_base));
    detail += name + fmt(": bo %.4f", bo_damped) + fmt("<=%.4f", bo_plain) + fmt(", oc %.4f", oc_h1) +
              fmt("<=%.4f; ", oc_base);
  }
  if (o.pass) o.detail = detail + "matches golden summaries";
  return o;
}

Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "ofa_acceptance_determinism";
  fs::remove_all(root);
  for (const std::string& name : kDefaultGrid) {
    const ExperimentConfig config = read_experiment_config(config_path(name));
    for (const char* pass : {"a", "b"}) write_experiment_outputs(run_experiment(config), (root / pass / name).string(), false);
    for (const char* file : {"runs.csv", "summary.csv"}) {
      const std::string a = read_file(root / "a" / name / file);
      const std::string b = read_file(root / "b" / name / file);
      o.require(!a.empty() && a == b, name + "/" + file + " differs between executions");
    }
  }
  fs::remove_all(root);
  if (o.pass) o.detail = std::to_string(kDefaultGrid.size()) + " configs, runs.csv and summary.csv byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 worked-example exactness", worked_example},
      {"2 flow-solver oracle equivalence", flow_oracle},
      {"3 capacity-sensitive score equivalence at equal capacity", proposition_one},
      {"4 oscillation trap expectation", oscillation_trap},
      {"5 batch-boundary trap BMCF cost", lemma_one},
      {"6 grid diameter", diameters},
      {"7 delay bound, capacity and OPT safety", safety},
      {"8 mitigation regression", mitigation},
      {"9 determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    failures += o.pass ? 0 : 1;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
