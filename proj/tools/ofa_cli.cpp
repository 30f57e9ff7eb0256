// Command-line front end: run experiment configs, replay single runs,
// generate workloads and compute offline optima.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ofa/adversary.hpp"
#include "ofa/errors.hpp"
#include "ofa/harness.hpp"
#include "ofa/io.hpp"
#include "ofa/mcf.hpp"
#include "ofa/opt_oracle.hpp"

namespace {

void print_error(const std::string& code, const std::string& message) {
  std::cerr << nlohmann::json{{"error", code}, {"message", message}}.dump() << std::endl;
}

struct PolicyFlags {
  std::string name = "greedy";
  std::optional<std::string> alpha;
  std::optional<std::string> smoothing;
  std::optional<long> slack;
  std::optional<int> batch_size;
  std::optional<long> tau;
  std::optional<int> rho_reserve;
  std::optional<std::string> lambda;
  std::optional<double> theta_c;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--policy", name, "greedy | rgreedy | rgreedy_hyst | csvoronoi | bmcf")->required();
    cmd.add_option("--alpha", alpha, "csvoronoi capacity weight");
    cmd.add_option("--smoothing", smoothing, "csvoronoi smoothing: none | damped");
    cmd.add_option("--slack", slack, "rgreedy_hyst stickiness in distance units");
    cmd.add_option("--B", batch_size, "bmcf batch size");
    cmd.add_option("--tau", tau, "bmcf delay budget");
    cmd.add_option("--rho-reserve", rho_reserve, "bmcf H1 reservation");
    cmd.add_option("--lambda", lambda, "bmcf H2 scarcity weight");
    cmd.add_option("--theta-c", theta_c, "bmcf H3 concentration threshold");
  }

  ofa::PolicySpec spec() const {
    nlohmann::json doc{{"policy", name}};
    if (alpha) doc["alpha"] = *alpha;
    if (smoothing) doc["smoothing"] = *smoothing;
    if (slack) doc["slack"] = *slack;
    if (batch_size) doc["B"] = *batch_size;
    if (tau) doc["tau"] = *tau;
    if (rho_reserve) doc["rho_reserve"] = *rho_reserve;
    if (lambda) doc["lambda"] = *lambda;
    if (theta_c) doc["theta_c"] = *theta_c;
    return ofa::parse_policy_spec(doc);
  }
};

struct GenFlags {
  std::string kind;
  std::string out;
  std::uint64_t seed = 0;
  std::optional<std::string> instance_file;
  int rows = 10;
  int cols = 10;
  int facilities = 4;
  int capacity = 10;
  std::string placement = "lattice";
  std::size_t n = 20;
  int centers = 3;
  double sigma = 1.0;
  int burst_len = 10;
  int center_capacity = 2;
  int inner_count = 3;
  int far_offset = 6;
  int region_radius = 2;
  int separation = 10;
  int pairs = 1;
  int delta = 16;
  int group_gap = 0;
  bool offset_far = false;
};

ofa::GeneratedWorkload generate(const GenFlags& f) {
  const auto kind = ofa::parse_workload_kind(f.kind);
  if (!kind) throw ofa::ConfigInvalid("unknown workload '" + f.kind + "'");
  const ofa::RngSeed seed{f.seed};
  const auto base_instance = [&] {
    if (f.instance_file) return ofa::read_instance_file(*f.instance_file);
    const auto placement = ofa::parse_placement(f.placement);
    if (!placement) throw ofa::ConfigInvalid("unknown placement '" + f.placement + "'");
    return ofa::place_facilities(f.rows, f.cols, f.facilities, f.capacity, *placement,
                                 ofa::mix_seed(seed, ofa::kInstanceStream));
  };
  switch (*kind) {
    case ofa::WorkloadKind::kUniformIid: {
      ofa::GridInstance instance = base_instance();
      ofa::RequestSequence sequence = ofa::gen_uniform(instance, f.n, seed);
      return {std::move(instance), std::move(sequence)};
    }
    case ofa::WorkloadKind::kClusteredBursts: {
      ofa::GridInstance instance = base_instance();
      ofa::RequestSequence sequence = ofa::gen_clustered(instance, f.n, f.centers, f.sigma, f.burst_len, seed);
      return {std::move(instance), std::move(sequence)};
    }
    case ofa::WorkloadKind::kZoneCollapse:
      return ofa::gen_zone_collapse({f.rows, f.cols, f.center_capacity, f.inner_count, f.far_offset, f.region_radius},
                                    seed);
    case ofa::WorkloadKind::kOscillationTrap:
      return ofa::gen_oscillation_trap({f.rows, f.cols, f.separation, f.pairs}, seed);
    case ofa::WorkloadKind::kBatchBoundaryTrap:
      return ofa::gen_batch_boundary_trap({f.rows, f.cols, f.delta, f.capacity, f.group_gap, f.offset_far}, seed);
  }
  throw ofa::ConfigInvalid("unhandled workload");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online facility assignment benchmark on grid graphs"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool events = false;
  CLI::App* run = app.add_subcommand("run", "Run an experiment config and write CSV reports");
  run->add_option("config", config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "output directory (overrides the config)");
  run->add_flag("--events", events, "also dump per-run event logs");

  std::string instance_path;
  std::string sequence_path;
  std::uint64_t seed = 0;
  std::string events_out;
  std::string batches_out;
  bool tables = false;
  PolicyFlags policy;
  CLI::App* rep = app.add_subcommand("replay", "Replay one policy on an instance/sequence pair");
  rep->add_option("instance", instance_path, "instance file (JSON)")->required();
  rep->add_option("sequence", sequence_path, "sequence file (CSV)")->required();
  rep->add_option("--seed", seed, "run seed");
  rep->add_option("--out", events_out, "write the event log here instead of stdout");
  rep->add_option("--batches", batches_out, "write batch records (bmcf only)");
  rep->add_flag("--flow-tables", tables, "print each batch's distance network and flow table to stderr (mitigations not shown)");
  policy.add_to(*rep);

  GenFlags gen_flags;
  CLI::App* gen = app.add_subcommand("gen", "Generate a workload and dump instance + sequence files");
  gen->add_option("workload", gen_flags.kind,
                  "uniform_iid | clustered_bursts | zone_collapse | oscillation_trap | batch_boundary_trap")
      ->required();
  gen->add_option("--out", gen_flags.out, "output prefix: <out>.instance.json and <out>.sequence.csv")->required();
  gen->add_option("--seed", gen_flags.seed);
  gen->add_option("--instance", gen_flags.instance_file, "base instance for uniform/clustered workloads");
  gen->add_option("--rows", gen_flags.rows);
  gen->add_option("--cols", gen_flags.cols);
  gen->add_option("--facilities", gen_flags.facilities);
  gen->add_option("--capacity", gen_flags.capacity, "per-facility capacity (also C for batch_boundary_trap)");
  gen->add_option("--placement", gen_flags.placement, "lattice | random");
  gen->add_option("--n", gen_flags.n, "request count");
  gen->add_option("--centers", gen_flags.centers);
  gen->add_option("--sigma", gen_flags.sigma);
  gen->add_option("--burst-len", gen_flags.burst_len);
  gen->add_option("--center-capacity", gen_flags.center_capacity);
  gen->add_option("--inner-count", gen_flags.inner_count);
  gen->add_option("--far-offset", gen_flags.far_offset);
  gen->add_option("--region-radius", gen_flags.region_radius);
  gen->add_option("--separation", gen_flags.separation);
  gen->add_option("--pairs", gen_flags.pairs);
  gen->add_option("--delta", gen_flags.delta);
  gen->add_option("--group-gap", gen_flags.group_gap);
  gen->add_flag("--offset-far", gen_flags.offset_far);

  bool brute_force = false;
  CLI::App* opt = app.add_subcommand("opt", "Compute the offline optimum of a sequence");
  opt->add_option("instance", instance_path, "instance file (JSON)")->required();
  opt->add_option("sequence", sequence_path, "sequence file (CSV)")->required();
  opt->add_flag("--brute-force", brute_force, "use exhaustive enumeration (tiny inputs only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("UsageError", e.what());
    return 2;
  }

  try {
    if (*run) {
      ofa::ExperimentConfig config = ofa::read_experiment_config(config_path);
      if (!out_dir.empty()) config.output_dir = out_dir;
      if (config.output_dir.empty()) config.output_dir = "out";
      const ofa::ExperimentResult result = ofa::run_experiment(config);
      ofa::write_experiment_outputs(result, config.output_dir, events || config.write_events);
      std::cout << ofa::format_summary_csv(result);
    } else if (*rep) {
      const ofa::GridInstance instance = ofa::read_instance_file(instance_path);
      const ofa::RequestSequence sequence = ofa::read_sequence_file(sequence_path);
      const ofa::PolicySpec spec = policy.spec();
      const ofa::ReplayResult result = ofa::replay(instance, sequence, spec, ofa::RngSeed{seed});
      if (events_out.empty()) {
        ofa::write_log_csv(std::cout, result.log);
      } else {
        std::ofstream out(events_out, std::ios::binary);
        ofa::write_log_csv(out, result.log);
      }
      if (!batches_out.empty()) {
        std::ofstream out(batches_out, std::ios::binary);
        ofa::write_batches_csv(out, result.batches);
      }
      if (tables) {
        // Re-solve each frozen batch against the capacities it saw.
        ofa::CapacityLedger ledger(instance);
        for (const ofa::BatchRecord& batch : result.batches) {
          std::vector<ofa::GridPoint> points;
          for (std::size_t i : batch.request_indices) points.push_back(sequence.requests[i].location);
          const auto network = ofa::build_batch_network(points, ledger, instance);
          const auto solution = ofa::solve_min_cost_flow(network, static_cast<std::int64_t>(points.size()));
          std::cerr << ofa::format_network_table(network) << ofa::format_flow_table(network, solution) << "\n";
          for (const auto& [facility, count] : batch.per_facility_counts) {
            for (int k = 0; k < count; ++k) ledger.commit(facility);
          }
        }
      }
    } else if (*gen) {
      const ofa::GeneratedWorkload workload = generate(gen_flags);
      ofa::write_instance_file(gen_flags.out + ".instance.json", workload.instance);
      ofa::write_sequence_file(gen_flags.out + ".sequence.csv", workload.sequence);
      std::cout << gen_flags.out << ".instance.json\n" << gen_flags.out << ".sequence.csv\n";
    } else if (*opt) {
      const ofa::GridInstance instance = ofa::read_instance_file(instance_path);
      const ofa::RequestSequence sequence = ofa::read_sequence_file(sequence_path);
      const ofa::OptResult result =
          brute_force ? ofa::brute_force_opt(instance, sequence) : ofa::offline_opt(instance, sequence);
      std::cout << "opt_cost," << result.total_cost << "\nrequest_index,facility_id\n";
      for (std::size_t i = 0; i < result.assignment.size(); ++i) {
        std::cout << i << "," << result.assignment[i] << "\n";
      }
    }
  } catch (const ofa::Error& e) {
    print_error(e.code(), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("InternalError", e.what());
    return 1;
  }
  return 0;
}
