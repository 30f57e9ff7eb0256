#include "ofa/harness.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ofa/errors.hpp"
#include "ofa/io.hpp"
#include "ofa/opt_oracle.hpp"

namespace ofa {

namespace {

using nlohmann::json;

// Typed access to one JSON object that rejects unknown keys on finish().
class ObjectReader {
 public:
  ObjectReader(const json& doc, std::string where) : doc_(doc), where_(std::move(where)) {
    if (!doc_.is_object()) fail("expected an object");
  }

  bool has(const char* key) const { return doc_.contains(key); }
  void mark_used(const char* key) { used_.insert(key); }

  const json& raw(const char* key) {
    used_.insert(key);
    if (!doc_.contains(key)) fail(std::string("missing key '") + key + "'");
    return doc_.at(key);
  }

  template <typename T>
  T require(const char* key) {
    return convert<T>(raw(key), key);
  }

  template <typename T>
  T get(const char* key, T fallback) {
    used_.insert(key);
    return doc_.contains(key) ? convert<T>(doc_.at(key), key) : fallback;
  }

  void finish() const {
    for (const auto& [key, value] : doc_.items()) {
      if (!used_.count(key)) fail("unknown key '" + key + "'");
    }
  }

  [[noreturn]] void fail(const std::string& what) const { throw ConfigInvalid(where_ + ": " + what); }

 private:
  template <typename T>
  T convert(const json& v, const char* key) const {
    const auto bad = [&](const char* type) { fail(std::string("'") + key + "' must be " + type); };
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) bad("a boolean");
      return v.get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) bad("a string");
      return v.get<std::string>();
    } else if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) bad("a number");
      return v.get<double>();
    } else if constexpr (std::is_same_v<T, Rational>) {
      if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
      if (v.is_number()) return rational_from_double(v.get<double>());
      if (v.is_string()) return parse_decimal(v.get<std::string>());
      bad("a number");
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      if (!v.is_number_unsigned()) bad("a non-negative integer");
      return v.get<std::uint64_t>();
    } else {
      static_assert(std::is_integral_v<T>);
      if (!v.is_number_integer()) bad("an integer");
      const auto value = v.get<std::int64_t>();
      if (std::is_unsigned_v<T> && value < 0) bad("a non-negative integer");
      return static_cast<T>(value);
    }
    return T{};
  }

  const json& doc_;
  std::string where_;
  std::set<std::string> used_;
};

std::string resolve(const std::string& base_dir, const std::string& path) {
  const std::filesystem::path p(path);
  return p.is_absolute() ? path : (std::filesystem::path(base_dir) / p).string();
}

WorkloadSpec parse_workload(const json& doc, const std::string& base_dir) {
  ObjectReader r(doc, "workload");
  const auto kind = r.require<std::string>("kind");
  WorkloadSpec spec;
  spec.label = r.get<std::string>("label", kind);

  if (kind == "uniform_iid") {
    spec.params = UniformParams{r.require<std::size_t>("n")};
  } else if (kind == "clustered_bursts") {
    spec.params = ClusteredParams{r.require<std::size_t>("n"), r.get<int>("centers", 3), r.get<double>("sigma", 1.0),
                                  r.get<int>("burst_len", 10)};
  } else if (kind == "zone_collapse") {
    ZoneCollapseParams p;
    p.rows = r.require<int>("rows");
    p.cols = r.require<int>("cols");
    p.center_capacity = r.require<int>("center_capacity");
    p.inner_count = r.require<int>("inner_count");
    p.far_offset = r.require<int>("far_offset");
    p.region_radius = r.get<int>("region_radius", p.region_radius);
    spec.params = p;
  } else if (kind == "oscillation_trap") {
    OscillationTrapParams p;
    p.rows = r.require<int>("rows");
    p.cols = r.require<int>("cols");
    p.separation = r.require<int>("separation");
    p.pairs = r.get<int>("pairs", 1);
    spec.params = p;
  } else if (kind == "batch_boundary_trap") {
    BatchBoundaryTrapParams p;
    p.rows = r.require<int>("rows");
    p.cols = r.require<int>("cols");
    p.delta = r.require<int>("delta");
    p.capacity = r.require<int>("capacity");
    p.group_gap = r.get<int>("group_gap", 0);
    p.offset_far = r.get<bool>("offset_far", false);
    spec.params = p;
  } else if (kind == "fixed") {
    FixedSequence fixed;
    if (r.has("sequence_file")) {
      fixed.sequence = read_sequence_file(resolve(base_dir, r.require<std::string>("sequence_file")));
    } else {
      const json& requests = r.raw("requests");
      if (!requests.is_array()) r.fail("'requests' must be a list of [x, y] pairs");
      std::vector<GridPoint> points;
      for (const json& p : requests) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
          r.fail("each request must be an [x, y] pair of integers");
        }
        points.push_back(GridPoint{p[0].get<int>(), p[1].get<int>()});
      }
      fixed.sequence = RequestSequence::from_points(points);
    }
    spec.params = std::move(fixed);
  } else {
    r.fail("unknown workload kind '" + kind + "'");
  }
  r.finish();
  return spec;
}

std::optional<GridInstance> parse_instance(const json& doc, const std::string& base_dir, RngSeed base_seed) {
  if (doc.contains("instance_file")) {
    if (!doc.at("instance_file").is_string()) throw ConfigInvalid("'instance_file' must be a string");
    return read_instance_file(resolve(base_dir, doc.at("instance_file").get<std::string>()));
  }
  if (!doc.contains("instance")) return std::nullopt;
  const json& inst = doc.at("instance");
  if (inst.contains("facilities") && inst.at("facilities").is_array()) {
    try {
      return instance_from_json(inst, "instance");
    } catch (const ParseError& e) {
      throw ConfigInvalid(e.what());
    }
  }
  ObjectReader r(inst, "instance");
  const int rows = r.require<int>("rows");
  const int cols = r.require<int>("cols");
  const auto placement_name = r.get<std::string>("placement", "lattice");
  const int count = r.require<int>("facilities");
  const int capacity = r.require<int>("capacity");
  r.finish();
  const auto placement = parse_placement(placement_name);
  if (!placement) throw ConfigInvalid("instance: unknown placement '" + placement_name + "'");
  return place_facilities(rows, cols, count, capacity, *placement, mix_seed(base_seed, kInstanceStream));
}

MetricsConfig parse_metrics(const json& doc) {
  ObjectReader r(doc, "metrics");
  MetricsConfig m;
  m.proximity_window = r.require<Distance>("w");
  m.far_threshold = r.require<Distance>("D_far");
  m.near_threshold = r.require<Distance>("D_near");
  m.conc_threshold = r.require<double>("rho_conc");
  r.finish();
  m.validate();
  return m;
}

std::string file_slug(const std::string& label) {
  std::string slug;
  for (char ch : label) {
    const bool keep = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '_' ||
                      ch == '.' || ch == '-';
    slug += keep ? ch : '_';
  }
  return slug;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigInvalid("cannot open '" + path.string() + "' for writing");
  out << text;
}

}  // namespace

PolicySpec parse_policy_spec(const json& doc) {
  ObjectReader r(doc, "policy");
  const auto name = r.require<std::string>("policy");
  PolicySpec spec;
  if (name == "greedy") {
    spec.policy = OnlinePolicy{GreedyPolicy{}};
  } else if (name == "rgreedy") {
    spec.policy = OnlinePolicy{RandomizedGreedyPolicy{}};
  } else if (name == "rgreedy_hyst") {
    HysteresisConfig c;
    c.slack = r.get<Distance>("slack", c.slack);
    if (c.slack < 0) r.fail("'slack' must be non-negative");
    spec.policy = OnlinePolicy{c};
  } else if (name == "csvoronoi") {
    CsVoronoiConfig c;
    c.alpha = r.get<Rational>("alpha", c.alpha);
    if (c.alpha <= 0) r.fail("'alpha' must be positive");
    const auto smoothing = r.get<std::string>("smoothing", "none");
    if (smoothing == "damped") {
      c.smoothing = Smoothing::kDamped;
    } else if (smoothing != "none") {
      r.fail("'smoothing' must be none or damped");
    }
    spec.policy = OnlinePolicy{c};
  } else if (name == "bmcf") {
    BatchConfig c;
    c.batch_size = r.require<int>("B");
    c.delay_budget = r.require<TimeStep>("tau");
    c.reservation = r.get<int>("rho_reserve", 0);
    c.scarcity_lambda = r.get<Rational>("lambda", Rational(0));
    c.concentration_threshold = r.get<double>("theta_c", 1.0);
    c.validate();
    spec.policy = c;
  } else {
    r.fail("unknown policy '" + name + "'");
  }
  if (const auto* batch = std::get_if<BatchConfig>(&spec.policy)) {
    spec.label = r.get<std::string>("label", batch_config_label(*batch));
  } else {
    spec.label = r.get<std::string>("label", policy_label(std::get<OnlinePolicy>(spec.policy)));
  }
  r.finish();
  return spec;
}

GeneratedWorkload generate_workload(const WorkloadSpec& spec, const std::optional<GridInstance>& instance,
                                    RngSeed seed) {
  const auto need_instance = [&]() -> const GridInstance& {
    if (!instance) throw ConfigInvalid("workload '" + spec.label + "' needs an instance");
    return *instance;
  };
  if (const auto* p = std::get_if<UniformParams>(&spec.params)) {
    return {need_instance(), gen_uniform(need_instance(), p->n, seed)};
  }
  if (const auto* p = std::get_if<ClusteredParams>(&spec.params)) {
    return {need_instance(), gen_clustered(need_instance(), p->n, p->centers, p->sigma, p->burst_len, seed)};
  }
  if (const auto* p = std::get_if<ZoneCollapseParams>(&spec.params)) return gen_zone_collapse(*p, seed);
  if (const auto* p = std::get_if<OscillationTrapParams>(&spec.params)) return gen_oscillation_trap(*p, seed);
  if (const auto* p = std::get_if<BatchBoundaryTrapParams>(&spec.params)) return gen_batch_boundary_trap(*p, seed);
  return {need_instance(), std::get<FixedSequence>(spec.params).sequence};
}

ExperimentConfig parse_experiment_config(const json& doc, const std::string& base_dir) {
  ObjectReader r(doc, "config");
  const int version = r.require<int>("schema_version");
  if (version != kConfigSchemaVersion) {
    r.fail("unsupported schema_version " + std::to_string(version));
  }
  ExperimentConfig config;
  config.base_seed = RngSeed{r.get<std::uint64_t>("base_seed", 0)};
  config.trials = r.require<std::size_t>("trials");
  if (config.trials < 1) r.fail("'trials' must be positive");
  r.mark_used("instance");
  r.mark_used("instance_file");
  config.instance = parse_instance(doc, base_dir, config.base_seed);
  config.workload = parse_workload(r.raw("workload"), base_dir);
  config.name = r.get<std::string>("name", config.workload.label);

  const json& policies = r.raw("policies");
  if (!policies.is_array() || policies.empty()) r.fail("'policies' must be a non-empty list");
  std::set<std::string> labels;
  for (const json& p : policies) {
    config.policies.push_back(parse_policy_spec(p));
    if (!labels.insert(config.policies.back().label).second) {
      r.fail("duplicate policy label '" + config.policies.back().label + "'");
    }
  }
  if (r.has("metrics")) config.metrics = parse_metrics(r.raw("metrics"));
  if (r.has("output")) {
    ObjectReader out(r.raw("output"), "output");
    config.output_dir = out.get<std::string>("dir", "");
    config.write_events = out.get<bool>("events", false);
    out.finish();
  }
  r.finish();
  return config;
}

ExperimentConfig read_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path, 0, e.what());
  }
  return parse_experiment_config(doc, std::filesystem::path(path).parent_path().string());
}

std::uint64_t fingerprint(const RequestSequence& sequence) {
  std::uint64_t h = splitmix64(sequence.size());
  for (const Request& r : sequence.requests) {
    h = splitmix64(h ^ static_cast<std::uint64_t>(r.location.x));
    h = splitmix64(h ^ static_cast<std::uint64_t>(r.location.y));
    h = splitmix64(h ^ static_cast<std::uint64_t>(r.arrival_time));
  }
  return h;
}

ReplayResult replay(const GridInstance& instance, const RequestSequence& sequence, const PolicySpec& policy,
                    RngSeed seed) {
  ReplayResult result;
  if (const auto* batch = std::get_if<BatchConfig>(&policy.policy)) {
    SemiOnlineResult run = run_semi_online(instance, sequence, *batch, seed);
    validate_log(instance, sequence, run.log, batch->delay_budget);
    result.log = std::move(run.log);
    result.batches = std::move(run.batches);
  } else {
    result.log = run_online(instance, sequence, std::get<OnlinePolicy>(policy.policy), seed);
    validate_log(instance, sequence, result.log, 0);
  }
  return result;
}

CompetitiveRatio normalized_ratio(const RunRecord& run, const RunRecord& baseline) {
  if (run.report.workload != baseline.report.workload || run.report.seed != baseline.report.seed ||
      run.sequence_fingerprint != baseline.sequence_fingerprint) {
    throw MixedConfigs("normalized ratio needs runs on the same sequence and seed");
  }
  return competitive_ratio(static_cast<double>(run.report.alg_cost), baseline.report.alg_cost);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult result;
  result.workload = config.name;

  std::optional<std::size_t> baseline;
  for (std::size_t p = 0; p < config.policies.size(); ++p) {
    const auto* batch = std::get_if<BatchConfig>(&config.policies[p].policy);
    if (batch && batch->is_baseline()) {
      baseline = p;
      break;
    }
  }

  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    const RngSeed seed = mix_seed(config.base_seed, trial);
    const GeneratedWorkload workload =
        generate_workload(config.workload, config.instance, mix_seed(seed, kWorkloadStream));
    const OptResult opt = offline_opt(workload.instance, workload.sequence);
    const MetricsConfig metrics = config.metrics.value_or(MetricsConfig::defaults_for(workload.instance));
    metrics.validate();
    const std::uint64_t print = fingerprint(workload.sequence);

    const std::size_t first = result.runs.size();
    for (const PolicySpec& policy : config.policies) {
      RunRecord record;
      record.trial = trial;
      record.sequence_fingerprint = print;
      try {
        ReplayResult run = replay(workload.instance, workload.sequence, policy, seed);
        record.log = std::move(run.log);
        record.batches = std::move(run.batches);
      } catch (const Error& e) {
        throw Error(e.code(), policy.label + " trial " + std::to_string(trial) + ": " + e.what());
      }

      RunReport& report = record.report;
      report.workload = config.name;
      report.policy = policy.label;
      report.seed = seed;
      report.alg_cost = record.log.total_cost();
      report.opt_cost = opt.total_cost;
      if (report.opt_cost > report.alg_cost) {
        throw InvariantViolation(policy.label + " trial " + std::to_string(trial) + " beat the offline optimum");
      }
      report.ratio = competitive_ratio(static_cast<double>(report.alg_cost), report.opt_cost);
      report.boundary_oscillation_rate =
          record.log.size() >= 2 ? boundary_oscillation_rate(record.log, workload.instance, metrics) : 0.0;
      report.zone_collapse_rate = zone_collapse_rate(record.log, workload.instance, metrics);
      if (policy.is_batch()) report.batch_overconcentration_rate = batch_overconcentration_rate(record.batches, metrics);
      report.metrics = metrics;
      result.runs.push_back(std::move(record));
    }
    if (baseline) {
      const RunRecord& base = result.runs[first + *baseline];
      for (std::size_t p = 0; p < config.policies.size(); ++p) {
        result.runs[first + p].normalized_ratio = normalized_ratio(result.runs[first + p], base);
      }
    }
  }

  for (std::size_t p = 0; p < config.policies.size(); ++p) {
    std::vector<RunReport> reports;
    std::vector<double> norm;
    bool norm_unbounded = false;
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
      const RunRecord& record = result.runs[trial * config.policies.size() + p];
      reports.push_back(record.report);
      if (record.normalized_ratio) {
        if (record.normalized_ratio->unbounded) {
          norm_unbounded = true;
        } else {
          norm.push_back(record.normalized_ratio->value);
        }
      }
    }
    result.summaries.push_back(aggregate_trials(reports));
    if (baseline && !norm_unbounded) {
      result.mean_normalized_ratio.push_back(describe(norm).mean);
    } else {
      result.mean_normalized_ratio.push_back(std::nullopt);
    }
  }
  return result;
}

std::string format_runs_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "workload,policy,seed,alg_cost,opt_cost,ratio,bo_rate,zc_rate,oc_rate,trials\n";
  for (const RunRecord& record : result.runs) {
    const RunReport& r = record.report;
    out << r.workload << "," << r.policy << "," << r.seed.value << "," << r.alg_cost << "," << r.opt_cost << ","
        << r.ratio.to_string() << "," << format_fixed(r.boundary_oscillation_rate) << ","
        << format_fixed(r.zone_collapse_rate) << ","
        << (r.batch_overconcentration_rate ? format_fixed(*r.batch_overconcentration_rate) : std::string()) << ","
        << r.trial_count << "\n";
  }
  return out.str();
}

std::string format_summary_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "workload,policy,trials,mean_cost,stderr_cost,max_cost,p95_cost,mean_opt,mean_ratio,max_ratio,"
         "mean_bo,stderr_bo,max_bo,mean_zc,stderr_zc,max_zc,mean_oc,stderr_oc,max_oc,mean_norm_ratio,"
         "w,d_far,d_near,rho_conc\n";
  for (std::size_t i = 0; i < result.summaries.size(); ++i) {
    const TrialSummary& s = result.summaries[i];
    const auto stat = [](const Statistic& st) {
      return format_fixed(st.mean) + "," + format_fixed(st.std_error) + "," + format_fixed(st.max);
    };
    out << s.workload << "," << s.policy << "," << s.trials << "," << stat(s.cost) << "," << format_fixed(s.p95_cost)
        << "," << format_fixed(s.mean_opt) << "," << s.mean_ratio.to_string() << "," << s.max_ratio.to_string() << ","
        << stat(s.bo_rate) << "," << stat(s.zc_rate) << "," << (s.oc_rate ? stat(*s.oc_rate) : std::string(",,"))
        << ","
        << (result.mean_normalized_ratio[i] ? format_fixed(*result.mean_normalized_ratio[i]) : std::string()) << ","
        << s.metrics.proximity_window << "," << s.metrics.far_threshold << "," << s.metrics.near_threshold << ","
        << format_fixed(s.metrics.conc_threshold) << "\n";
  }
  return out.str();
}

std::string format_batches_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "policy,seed,batch_id,trigger,size,freeze_time,batch_cost,max_facility_share\n";
  for (const RunRecord& record : result.runs) {
    for (std::size_t b = 0; b < record.batches.size(); ++b) {
      out << record.report.policy << "," << record.report.seed.value << "," << batch_csv_row(b, record.batches[b])
          << "\n";
    }
  }
  return out.str();
}

void write_experiment_outputs(const ExperimentResult& result, const std::string& dir, bool write_events) {
  const std::filesystem::path root(dir);
  std::filesystem::create_directories(root);
  write_text(root / "runs.csv", format_runs_csv(result));
  write_text(root / "summary.csv", format_summary_csv(result));
  const bool any_batches =
      std::any_of(result.runs.begin(), result.runs.end(), [](const RunRecord& r) { return !r.batches.empty(); });
  if (any_batches) write_text(root / "batches.csv", format_batches_csv(result));
  if (write_events) {
    std::filesystem::create_directories(root / "events");
    for (const RunRecord& record : result.runs) {
      std::ostringstream out;
      write_log_csv(out, record.log);
      write_text(root / "events" / (file_slug(record.report.policy) + "_trial" + std::to_string(record.trial) + ".csv"),
                 out.str());
    }
  }
}

}  // namespace ofa
