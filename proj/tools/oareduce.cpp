// Command-line harness: builds shuffled replicated parity-check instances (or
// loads an array from a file), runs GA batches and/or the exhaustive oracle,
// and writes JSON/CSV reports.

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oar/experiment.hpp"

namespace {

std::string instance_label(const oar::ExperimentSpec& spec) {
  if (!spec.instance_file.empty()) return spec.instance_file;
  std::ostringstream out;
  const long n = static_cast<long>(spec.start_index) << spec.strength;
  out << "OA(" << n << ',' << spec.strength + 1 << ",2," << spec.strength << ')';
  return out.str();
}

void print_summary(std::ostream& os, const oar::BatchSummary& summary) {
  const auto& spec = summary.spec;
  os << instance_label(spec) << "  lambda " << spec.start_index << " -> "
     << spec.target_index << '\n';
  if (!summary.per_run.empty()) {
    os << "  runs " << summary.per_run.size() << "  successes " << summary.success_count
       << "  median best fitness " << *summary.median_best_fitness << '\n';
    std::map<double, int> nonzero;
    for (double f : summary.best_fitness_distribution) {
      if (f != 0.0) ++nonzero[std::round(f * 1e6) / 1e6];
    }
    if (!nonzero.empty()) {
      os << "  nonzero best fitness values:";
      for (const auto& [value, count] : nonzero) os << ' ' << value << " x" << count;
      os << '\n';
    }
  }
  if (summary.oracle) {
    os << "  oracle: " << summary.oracle->masks_enumerated
       << " masks enumerated, min fitness " << summary.oracle->min_fitness << ", "
       << summary.oracle->optimal_count << " optimal\n";
  }
  if (summary.oracle_refusal) {
    os << "  oracle skipped: " << *summary.oracle_refusal << '\n';
  }
}

void print_grid(std::ostream& os, const std::vector<oar::BatchSummary>& summaries) {
  os << "successes/runs and median best fitness per (lambda, lambda'):\n";
  os << "lambda \\ lambda'";
  for (int lp = 1; lp <= 3; ++lp) os << std::setw(16) << lp;
  os << '\n';
  for (int lambda = 2; lambda <= 4; ++lambda) {
    os << std::setw(16) << lambda;
    for (int lp = 1; lp <= 3; ++lp) {
      std::string cell = "-";
      for (const auto& summary : summaries) {
        if (summary.spec.start_index == lambda && summary.spec.target_index == lp) {
          std::ostringstream c;
          c << '(' << summary.success_count << '/' << summary.per_run.size() << ", ";
          if (summary.median_best_fitness) {
            c << std::fixed << std::setprecision(2) << *summary.median_best_fitness;
          } else {
            c << '-';
          }
          c << ')';
          cell = c.str();
        }
      }
      os << std::setw(16) << cell;
    }
    os << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Searches a binary orthogonal array for a subset of rows whose removal "
      "leaves a smaller orthogonal array of the same strength."};

  int strength = 4;
  int lambda = 2;
  int lambda_prime = 1;
  int runs = 30;
  int pop_size = 500;
  int tournament = 3;
  double mutation_prob = 0.2;
  std::int64_t budget = 100'000;
  std::string crossover = "map-of-ones";
  double exponent = 2.0;
  std::uint64_t seed = 1;
  std::uint64_t instance_seed = 1;
  std::string mode = "ga";
  bool fresh_instance = false;
  std::string out_path;
  std::string format = "json";
  std::string instance_file;
  bool table1 = false;

  app.add_option("-t,--strength", strength, "strength t of the generated instance");
  app.add_option("--lambda", lambda, "index of the starting array");
  app.add_option("--lambda-prime", lambda_prime, "target index after row removal");
  app.add_option("--runs", runs, "independent GA runs per batch");
  app.add_option("--pop-size", pop_size, "GA population size");
  app.add_option("--tournament", tournament, "tournament size");
  app.add_option("--mutation-prob", mutation_prob, "per-offspring swap probability");
  app.add_option("--budget", budget, "fitness evaluation budget per run");
  app.add_option("--crossover", crossover, "balanced crossover variant")
      ->check(CLI::IsMember({"map-of-ones", "counter"}));
  app.add_option("--exponent", exponent, "Minkowski exponent of the fitness");
  app.add_option("--seed", seed, "base seed for the GA run streams");
  app.add_option("--instance-seed", instance_seed, "seed of the instance shuffle");
  app.add_option("--mode", mode, "what to run")
      ->check(CLI::IsMember({"ga", "oracle", "both"}));
  app.add_flag("--fresh-instance-per-run", fresh_instance,
               "reshuffle a new instance for every run");
  app.add_option("--out", out_path, "write the report to this path");
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--instance-file", instance_file,
                 "load the starting array from this file instead of generating");
  app.add_flag("--table1", table1,
               "run the full strength-4 grid (lambda 2..4, lambda' < lambda) with "
               "default GA parameters");

  CLI11_PARSE(app, argc, argv);

  try {
    oar::ExperimentSpec spec;
    spec.strength = strength;
    spec.start_index = lambda;
    spec.target_index = lambda_prime;
    spec.runs = runs;
    spec.instance_seed = instance_seed;
    spec.fresh_instance_per_run = fresh_instance;
    spec.instance_file = instance_file;
    spec.mode = mode == "ga"       ? oar::RunMode::ga
                : mode == "oracle" ? oar::RunMode::oracle
                                   : oar::RunMode::both;
    spec.ga.population_size = pop_size;
    spec.ga.tournament_size = tournament;
    spec.ga.mutation_probability = mutation_prob;
    spec.ga.evaluation_budget = budget;
    spec.ga.crossover = crossover == "counter" ? oar::CrossoverVariant::counter_based
                                               : oar::CrossoverVariant::map_of_ones;
    spec.ga.minkowski_exponent = exponent;
    spec.ga.seed = seed;

    const oar::ReportFormat report_format =
        format == "csv" ? oar::ReportFormat::csv : oar::ReportFormat::json;

    if (table1) {
      if (!instance_file.empty()) {
        throw std::invalid_argument("--table1 cannot be combined with --instance-file");
      }
      oar::ExperimentSpec base = spec;
      base.ga = oar::GaConfig{};  // the grid runs with the default GA parameters
      base.ga.seed = seed;
      const std::vector<oar::BatchSummary> summaries = oar::run_table1(base);
      print_grid(std::cout, summaries);
      for (const auto& summary : summaries) print_summary(std::cout, summary);
      if (!out_path.empty()) oar::emit_report(summaries, report_format, out_path);
    } else {
      const oar::BatchSummary summary = oar::run_batch(spec);
      print_summary(std::cout, summary);
      if (!out_path.empty()) oar::emit_report(summary, report_format, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
