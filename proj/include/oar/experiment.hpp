#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oar/ga.hpp"
#include "oar/oa.hpp"
#include "oar/oracle.hpp"

namespace oar {

enum class RunMode { ga, oracle, both };
enum class ReportFormat { json, csv };

/// One experiment cell: which instance to build (or load) and how to attack it.
struct ExperimentSpec {
  int strength = 4;
  int start_index = 2;   // lambda of the generated instance
  int target_index = 1;  // lambda' after removal
  int runs = 30;
  GaConfig ga;
  std::uint64_t instance_seed = 1;
  RunMode mode = RunMode::ga;
  bool fresh_instance_per_run = false;
  std::string instance_file;  // when set, load this array instead of generating

  void validate() const;

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

struct BatchSummary {
  ExperimentSpec spec;
  int success_count = 0;
  std::optional<double> median_best_fitness;  // lower median; empty without GA runs
  std::vector<double> best_fitness_distribution;  // per run, in run order
  std::vector<RunReport> per_run;
  double wall_time_seconds = 0.0;
  std::optional<OracleReport> oracle;
  std::optional<std::string> oracle_refusal;  // set when mode=both and the oracle declined

  friend bool operator==(const BatchSummary&, const BatchSummary&) = default;
};

/// GA seed of run `run_index`: derive_seed(ga.seed, run_index).
std::uint64_t run_seed(const GaConfig& ga, int run_index);

/// The batch instance: replicate_and_shuffle(parity_check_array(t), lambda)
/// seeded with instance_seed, or the instance file when one is named.
OrthogonalArray build_instance(const ExperimentSpec& spec);

/// Instance used by run `run_index`; differs per run only with
/// fresh_instance_per_run (seed derive_seed(instance_seed, run_index)).
OrthogonalArray instance_for_run(const ExperimentSpec& spec, int run_index);

/// Runs the spec: GA runs with per-run derived seeds, aggregation, and the
/// oracle cross-checks when the mode asks for them. Every run's report is
/// re-verified through the plain fitness path.
BatchSummary run_batch(const ExperimentSpec& spec);

/// The strength-4 experiment grid: (lambda, lambda') in
/// (2,1) (3,1) (3,2) (4,1) (4,2) (4,3), each as one batch. Per-cell seeds are
/// derived from the base spec's seeds by cell position.
std::vector<BatchSummary> run_table1(const ExperimentSpec& base);

nlohmann::json to_json(const GaConfig& config);
nlohmann::json to_json(const ExperimentSpec& spec);
nlohmann::json to_json(const RunReport& report);
nlohmann::json to_json(const OracleReport& report);
nlohmann::json to_json(const BatchSummary& summary);

GaConfig ga_config_from_json(const nlohmann::json& j);
ExperimentSpec experiment_spec_from_json(const nlohmann::json& j);
RunReport run_report_from_json(const nlohmann::json& j);
OracleReport oracle_report_from_json(const nlohmann::json& j);
BatchSummary batch_summary_from_json(const nlohmann::json& j);

/// JSON with the wall-time field removed, for determinism comparisons.
nlohmann::json strip_wall_time(nlohmann::json j);

std::string to_csv(const BatchSummary& summary);
std::string to_csv(const std::vector<BatchSummary>& summaries);

void emit_report(const BatchSummary& summary, ReportFormat format,
                 const std::string& path);
void emit_report(const std::vector<BatchSummary>& summaries, ReportFormat format,
                 const std::string& path);

}  // namespace oar
