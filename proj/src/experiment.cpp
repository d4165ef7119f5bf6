#include "oar/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "oar/rng.hpp"

namespace oar {

namespace {

constexpr int kSchemaVersion = 1;

std::string crossover_name(CrossoverVariant v) {
  return v == CrossoverVariant::map_of_ones ? "map-of-ones" : "counter";
}

CrossoverVariant crossover_from_name(const std::string& name) {
  if (name == "map-of-ones") return CrossoverVariant::map_of_ones;
  if (name == "counter") return CrossoverVariant::counter_based;
  throw std::invalid_argument("unknown crossover variant: " + name);
}

std::string aggregation_name(Aggregation a) {
  return a == Aggregation::global_norm ? "global-norm" : "per-block-sum";
}

Aggregation aggregation_from_name(const std::string& name) {
  if (name == "global-norm") return Aggregation::global_norm;
  if (name == "per-block-sum") return Aggregation::per_block_sum;
  throw std::invalid_argument("unknown aggregation: " + name);
}

std::string mode_name(RunMode m) {
  switch (m) {
    case RunMode::ga: return "ga";
    case RunMode::oracle: return "oracle";
    case RunMode::both: return "both";
  }
  throw std::logic_error("unreachable");
}

RunMode mode_from_name(const std::string& name) {
  if (name == "ga") return RunMode::ga;
  if (name == "oracle") return RunMode::oracle;
  if (name == "both") return RunMode::both;
  throw std::invalid_argument("unknown mode: " + name);
}

std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return {buffer, end};
}

double lower_median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];
}

}  // namespace

void ExperimentSpec::validate() const {
  if (strength < 1) throw std::invalid_argument("ExperimentSpec: strength must be >= 1");
  if (runs < 1) throw std::invalid_argument("ExperimentSpec: runs must be >= 1");
  if (target_index < 1) {
    throw std::invalid_argument("ExperimentSpec: target index must be >= 1");
  }
  if (instance_file.empty() && target_index >= start_index) {
    throw std::invalid_argument("ExperimentSpec: target index must be below start index");
  }
  ga.validate();
}

std::uint64_t run_seed(const GaConfig& ga, int run_index) {
  return derive_seed(ga.seed, static_cast<std::uint64_t>(run_index));
}

namespace {

OrthogonalArray build_instance_seeded(const ExperimentSpec& spec, std::uint64_t seed) {
  if (!spec.instance_file.empty()) {
    OrthogonalArray arr = read_oa_file(spec.instance_file);
    if (!is_orthogonal_array(arr)) {
      throw std::runtime_error(spec.instance_file +
                               ": array does not satisfy its declared parameters");
    }
    if (spec.target_index >= arr.params().index) {
      throw std::invalid_argument(
          "ExperimentSpec: target index must be below the loaded array's index");
    }
    return arr;
  }
  return replicate_and_shuffle(parity_check_array(spec.strength), spec.start_index, seed);
}

}  // namespace

OrthogonalArray build_instance(const ExperimentSpec& spec) {
  return build_instance_seeded(spec, spec.instance_seed);
}

OrthogonalArray instance_for_run(const ExperimentSpec& spec, int run_index) {
  if (spec.fresh_instance_per_run && spec.instance_file.empty()) {
    return build_instance_seeded(
        spec, derive_seed(spec.instance_seed, static_cast<std::uint64_t>(run_index)));
  }
  return build_instance(spec);
}

BatchSummary run_batch(const ExperimentSpec& spec) {
  spec.validate();
  const auto start_time = std::chrono::steady_clock::now();

  BatchSummary summary;
  summary.spec = spec;

  // built even in pure GA mode: it validates the spec's instance up front
  const OrthogonalArray batch_instance = build_instance(spec);

  if (spec.mode != RunMode::oracle) {
    summary.per_run.reserve(static_cast<std::size_t>(spec.runs));
    for (int run = 0; run < spec.runs; ++run) {
      const OrthogonalArray instance =
          spec.fresh_instance_per_run ? instance_for_run(spec, run) : batch_instance;
      GaConfig config = spec.ga;
      config.seed = run_seed(spec.ga, run);
      RunReport report = run_ga(instance, spec.target_index, config);
      if (!verify_ga_result(instance, spec.target_index, report,
                            spec.ga.minkowski_exponent, spec.ga.aggregation)) {
        throw std::logic_error("run_batch: run report failed independent re-verification");
      }
      summary.best_fitness_distribution.push_back(report.best_fitness);
      if (report.success) ++summary.success_count;
      summary.per_run.push_back(std::move(report));
    }
    summary.median_best_fitness = lower_median(summary.best_fitness_distribution);
  }

  if (spec.mode != RunMode::ga) {
    OracleOptions options;
    options.exponent = spec.ga.minkowski_exponent;
    options.aggregation = spec.ga.aggregation;
    try {
      summary.oracle = exhaustive_search(batch_instance, spec.target_index, options);
    } catch (const std::runtime_error& e) {
      if (spec.mode == RunMode::oracle) throw;
      summary.oracle_refusal = e.what();  // non-fatal alongside GA results
    }
  }

  summary.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time)
          .count();
  return summary;
}

std::vector<BatchSummary> run_table1(const ExperimentSpec& base) {
  static constexpr std::pair<int, int> kCells[] = {{2, 1}, {3, 1}, {3, 2},
                                                   {4, 1}, {4, 2}, {4, 3}};
  std::vector<BatchSummary> summaries;
  summaries.reserve(std::size(kCells));
  int cell = 0;
  for (const auto& [lambda, lambda_prime] : kCells) {
    ExperimentSpec spec = base;
    spec.strength = 4;
    spec.start_index = lambda;
    spec.target_index = lambda_prime;
    spec.instance_file.clear();
    spec.ga.seed = derive_seed(base.ga.seed, static_cast<std::uint64_t>(cell));
    spec.instance_seed =
        derive_seed(base.instance_seed, static_cast<std::uint64_t>(cell));
    summaries.push_back(run_batch(spec));
    ++cell;
  }
  return summaries;
}

nlohmann::json to_json(const GaConfig& config) {
  return {
      {"population_size", config.population_size},
      {"tournament_size", config.tournament_size},
      {"mutation_probability", config.mutation_probability},
      {"evaluation_budget", config.evaluation_budget},
      {"crossover", crossover_name(config.crossover)},
      {"seed", config.seed},
      {"minkowski_exponent", config.minkowski_exponent},
      {"aggregation", aggregation_name(config.aggregation)},
      {"replace_only_if_better", config.replace_only_if_better},
      {"offspring_per_step", config.offspring_per_step},
  };
}

GaConfig ga_config_from_json(const nlohmann::json& j) {
  GaConfig config;
  config.population_size = j.at("population_size").get<int>();
  config.tournament_size = j.at("tournament_size").get<int>();
  config.mutation_probability = j.at("mutation_probability").get<double>();
  config.evaluation_budget = j.at("evaluation_budget").get<std::int64_t>();
  config.crossover = crossover_from_name(j.at("crossover").get<std::string>());
  config.seed = j.at("seed").get<std::uint64_t>();
  config.minkowski_exponent = j.at("minkowski_exponent").get<double>();
  config.aggregation = aggregation_from_name(j.at("aggregation").get<std::string>());
  config.replace_only_if_better = j.at("replace_only_if_better").get<bool>();
  config.offspring_per_step = j.at("offspring_per_step").get<int>();
  return config;
}

nlohmann::json to_json(const ExperimentSpec& spec) {
  nlohmann::json j{
      {"strength", spec.strength},
      {"lambda", spec.start_index},
      {"lambda_prime", spec.target_index},
      {"runs", spec.runs},
      {"ga", to_json(spec.ga)},
      {"instance_seed", spec.instance_seed},
      {"mode", mode_name(spec.mode)},
      {"fresh_instance_per_run", spec.fresh_instance_per_run},
  };
  j["instance_file"] =
      spec.instance_file.empty() ? nlohmann::json() : nlohmann::json(spec.instance_file);
  return j;
}

ExperimentSpec experiment_spec_from_json(const nlohmann::json& j) {
  ExperimentSpec spec;
  spec.strength = j.at("strength").get<int>();
  spec.start_index = j.at("lambda").get<int>();
  spec.target_index = j.at("lambda_prime").get<int>();
  spec.runs = j.at("runs").get<int>();
  spec.ga = ga_config_from_json(j.at("ga"));
  spec.instance_seed = j.at("instance_seed").get<std::uint64_t>();
  spec.mode = mode_from_name(j.at("mode").get<std::string>());
  spec.fresh_instance_per_run = j.at("fresh_instance_per_run").get<bool>();
  if (!j.at("instance_file").is_null()) {
    spec.instance_file = j.at("instance_file").get<std::string>();
  }
  return spec;
}

nlohmann::json to_json(const RunReport& report) {
  nlohmann::json trace = nlohmann::json::array();
  for (const TracePoint& point : report.fitness_trace) {
    trace.push_back({point.evaluation, point.best_fitness});
  }
  return {
      {"seed", report.seed},
      {"best_fitness", report.best_fitness},
      {"best_mask", report.best_mask.to_string()},
      {"success", report.success},
      {"evaluations_used", report.evaluations_used},
      {"fitness_trace", std::move(trace)},
  };
}

RunReport run_report_from_json(const nlohmann::json& j) {
  RunReport report;
  report.seed = j.at("seed").get<std::uint64_t>();
  report.best_fitness = j.at("best_fitness").get<double>();
  report.best_mask = RemovalMask::from_string(j.at("best_mask").get<std::string>());
  report.success = j.at("success").get<bool>();
  report.evaluations_used = j.at("evaluations_used").get<std::int64_t>();
  for (const auto& point : j.at("fitness_trace")) {
    report.fitness_trace.push_back(
        TracePoint{point.at(0).get<std::int64_t>(), point.at(1).get<double>()});
  }
  return report;
}

nlohmann::json to_json(const OracleReport& report) {
  nlohmann::json masks = nlohmann::json::array();
  for (const RemovalMask& mask : report.optimal_masks) masks.push_back(mask.to_string());
  nlohmann::json histogram = nlohmann::json::array();
  for (const auto& [fitness, count] : report.fitness_histogram) {
    histogram.push_back({fitness, count});
  }
  return {
      {"params",
       {{"n_rows", report.instance_params.n_rows},
        {"n_cols", report.instance_params.n_cols},
        {"alphabet", report.instance_params.alphabet},
        {"strength", report.instance_params.strength},
        {"index", report.instance_params.index}}},
      {"lambda_prime", report.target_index},
      {"removal_weight", report.removal_weight},
      {"masks_enumerated", report.masks_enumerated},
      {"min_fitness", report.min_fitness},
      {"optimal_count", report.optimal_count},
      {"optimal_masks", std::move(masks)},
      {"fitness_histogram", std::move(histogram)},
  };
}

OracleReport oracle_report_from_json(const nlohmann::json& j) {
  OracleReport report;
  const auto& p = j.at("params");
  report.instance_params = OaParams{p.at("n_rows").get<int>(), p.at("n_cols").get<int>(),
                                    p.at("alphabet").get<int>(), p.at("strength").get<int>(),
                                    p.at("index").get<int>()};
  report.target_index = j.at("lambda_prime").get<int>();
  report.removal_weight = j.at("removal_weight").get<int>();
  report.masks_enumerated = j.at("masks_enumerated").get<std::uint64_t>();
  report.min_fitness = j.at("min_fitness").get<double>();
  report.optimal_count = j.at("optimal_count").get<std::uint64_t>();
  for (const auto& mask : j.at("optimal_masks")) {
    report.optimal_masks.push_back(RemovalMask::from_string(mask.get<std::string>()));
  }
  for (const auto& bucket : j.at("fitness_histogram")) {
    report.fitness_histogram.emplace_back(bucket.at(0).get<double>(),
                                          bucket.at(1).get<std::uint64_t>());
  }
  return report;
}

nlohmann::json to_json(const BatchSummary& summary) {
  nlohmann::json j{
      {"schema_version", kSchemaVersion},
      {"spec", to_json(summary.spec)},
      {"success_count", summary.success_count},
      {"best_fitness_distribution", summary.best_fitness_distribution},
      {"wall_time_seconds", summary.wall_time_seconds},
  };
  j["median_best_fitness"] = summary.median_best_fitness
                                 ? nlohmann::json(*summary.median_best_fitness)
                                 : nlohmann::json();
  nlohmann::json runs = nlohmann::json::array();
  for (const RunReport& report : summary.per_run) runs.push_back(to_json(report));
  j["per_run"] = std::move(runs);
  j["oracle"] = summary.oracle ? to_json(*summary.oracle) : nlohmann::json();
  j["oracle_refusal"] =
      summary.oracle_refusal ? nlohmann::json(*summary.oracle_refusal) : nlohmann::json();
  return j;
}

BatchSummary batch_summary_from_json(const nlohmann::json& j) {
  if (j.at("schema_version").get<int>() != kSchemaVersion) {
    throw std::runtime_error("batch_summary_from_json: unsupported schema version");
  }
  BatchSummary summary;
  summary.spec = experiment_spec_from_json(j.at("spec"));
  summary.success_count = j.at("success_count").get<int>();
  if (!j.at("median_best_fitness").is_null()) {
    summary.median_best_fitness = j.at("median_best_fitness").get<double>();
  }
  summary.best_fitness_distribution =
      j.at("best_fitness_distribution").get<std::vector<double>>();
  for (const auto& report : j.at("per_run")) {
    summary.per_run.push_back(run_report_from_json(report));
  }
  summary.wall_time_seconds = j.at("wall_time_seconds").get<double>();
  if (!j.at("oracle").is_null()) {
    summary.oracle = oracle_report_from_json(j.at("oracle"));
  }
  if (!j.at("oracle_refusal").is_null()) {
    summary.oracle_refusal = j.at("oracle_refusal").get<std::string>();
  }
  return summary;
}

nlohmann::json strip_wall_time(nlohmann::json j) {
  if (j.is_array()) {
    for (auto& item : j) item.erase("wall_time_seconds");
  } else {
    j.erase("wall_time_seconds");
  }
  return j;
}

namespace {

constexpr const char* kCsvHeader =
    "lambda,lambda_prime,run,seed,best_fitness,success,evaluations_used\n";

void append_csv_rows(std::ostringstream& out, const BatchSummary& summary) {
  const ExperimentSpec& spec = summary.spec;
  std::int64_t total_evaluations = 0;
  for (std::size_t run = 0; run < summary.per_run.size(); ++run) {
    const RunReport& report = summary.per_run[run];
    out << spec.start_index << ',' << spec.target_index << ',' << run << ','
        << report.seed << ',' << format_double(report.best_fitness) << ','
        << (report.success ? 1 : 0) << ',' << report.evaluations_used << '\n';
    total_evaluations += report.evaluations_used;
  }
  out << spec.start_index << ',' << spec.target_index << ",summary," << spec.ga.seed
      << ','
      << (summary.median_best_fitness ? format_double(*summary.median_best_fitness) : "")
      << ',' << summary.success_count << ',' << total_evaluations << '\n';
}

}  // namespace

std::string to_csv(const BatchSummary& summary) {
  std::ostringstream out;
  out << kCsvHeader;
  append_csv_rows(out, summary);
  return out.str();
}

std::string to_csv(const std::vector<BatchSummary>& summaries) {
  std::ostringstream out;
  out << kCsvHeader;
  for (const BatchSummary& summary : summaries) append_csv_rows(out, summary);
  return out.str();
}

namespace {

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_report: cannot open " + path);
  out << text;
  if (!out) throw std::runtime_error("emit_report: write failed for " + path);
}

}  // namespace

void emit_report(const BatchSummary& summary, ReportFormat format,
                 const std::string& path) {
  write_text_file(path, format == ReportFormat::json ? to_json(summary).dump(2) + "\n"
                                                     : to_csv(summary));
}

void emit_report(const std::vector<BatchSummary>& summaries, ReportFormat format,
                 const std::string& path) {
  if (format == ReportFormat::json) {
    nlohmann::json j = nlohmann::json::array();
    for (const BatchSummary& summary : summaries) j.push_back(to_json(summary));
    write_text_file(path, j.dump(2) + "\n");
  } else {
    write_text_file(path, to_csv(summaries));
  }
}

}  // namespace oar
