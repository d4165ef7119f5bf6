#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "oar/fitness.hpp"
#include "oar/ga.hpp"
#include "oar/oa.hpp"
#include "oar/oracle.hpp"

using namespace oar;

namespace {

Population small_population(const std::vector<double>& fitnesses) {
  // distinct weight-2 masks over 6 positions, one per requested fitness
  Population population;
  int a = 0, b = 1;
  for (double f : fitnesses) {
    population.push_back(Individual{RemovalMask::from_ones(6, {a, b}), f});
    ++b;
    if (b == 6) {
      ++a;
      b = a + 1;
    }
  }
  return population;
}

GaConfig small_config() {
  GaConfig config;
  config.population_size = 3;
  config.tournament_size = 3;
  config.mutation_probability = 0.0;
  config.evaluation_budget = 10;
  return config;
}

}  // namespace

TEST_CASE("a lone zero-fitness member is never replaced") {
  Population population = small_population({0.0, 5.0, 5.0, 5.0, 5.0});
  const RemovalMask elite = population[0].mask;
  GaConfig config = small_config();
  config.population_size = 5;
  Rng rng(3);
  const FitnessFn stub = [](const RemovalMask&) { return 1000.0; };
  for (int step = 0; step < 300; ++step) {
    steady_state_step(population, stub, config, rng);
  }
  CHECK(population[0].fitness == 0.0);
  CHECK(population[0].mask == elite);
}

TEST_CASE("a child worse than the whole tournament still replaces the worst") {
  Population population = small_population({1.0, 2.0, 3.0});
  Rng rng(1);
  const FitnessFn stub = [](const RemovalMask&) { return 100.0; };
  const StepResult result = steady_state_step(population, stub, small_config(), rng);
  REQUIRE(result.children.size() == 1);
  CHECK(result.children[0].fitness == 100.0);
  CHECK(result.replaced == std::vector<int>{2});  // the 3.0 slot
  CHECK(population[2].fitness == 100.0);
  CHECK(population[0].fitness == 1.0);
  CHECK(population[1].fitness == 2.0);
}

TEST_CASE("replace_only_if_better keeps the incumbent against a worse child") {
  Population population = small_population({1.0, 2.0, 3.0});
  GaConfig config = small_config();
  config.replace_only_if_better = true;
  Rng rng(1);
  const StepResult worse =
      steady_state_step(population, [](const RemovalMask&) { return 100.0; }, config, rng);
  CHECK(worse.children[0].fitness == 100.0);
  CHECK(population[2].fitness == 3.0);  // unchanged

  steady_state_step(population, [](const RemovalMask&) { return 0.5; }, config, rng);
  CHECK(population[2].fitness == 0.5);  // an improvement does land
}

TEST_CASE("equal-fitness tournaments break ties over every member") {
  const FitnessFn stub = [](const RemovalMask&) { return 7.0; };
  std::set<int> replaced_slots;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Population population = small_population({7.0, 7.0, 7.0});
    Rng rng(seed);
    const StepResult result = steady_state_step(population, stub, small_config(), rng);
    replaced_slots.insert(result.replaced[0]);
  }
  CHECK(replaced_slots == std::set<int>{0, 1, 2});
}

TEST_CASE("two offspring fill the two worst slots") {
  Population population = small_population({1.0, 2.0, 3.0});
  GaConfig config = small_config();
  config.offspring_per_step = 2;
  Rng rng(5);
  const FitnessFn stub = [](const RemovalMask&) { return 50.0; };
  const StepResult result = steady_state_step(population, stub, config, rng);
  REQUIRE(result.children.size() == 2);
  CHECK(result.replaced == std::vector<int>{2, 1});
  CHECK(population[2].fitness == 50.0);
  CHECK(population[1].fitness == 50.0);
  CHECK(population[0].fitness == 1.0);

  // the budget clamp caps the brood
  Population fresh = small_population({1.0, 2.0, 3.0});
  const StepResult clamped = steady_state_step(fresh, stub, config, rng, 1);
  CHECK(clamped.children.size() == 1);
}

TEST_CASE("config validation") {
  GaConfig config;
  config.population_size = 1;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = GaConfig{};
  config.tournament_size = 501;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = GaConfig{};
  config.mutation_probability = 1.5;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = GaConfig{};
  config.evaluation_budget = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = GaConfig{};
  config.offspring_per_step = 3;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  CHECK_NOTHROW(GaConfig{}.validate());
}

TEST_CASE("run_ga is deterministic in the seed") {
  const OrthogonalArray arr = replicate_and_shuffle(parity_check_array(3), 2, 12);
  GaConfig config;
  config.population_size = 30;
  config.evaluation_budget = 300;
  config.seed = 5;
  const RunReport first = run_ga(arr, 1, config);
  const RunReport second = run_ga(arr, 1, config);
  CHECK(first == second);
  config.seed = 6;
  CHECK(run_ga(arr, 1, config) != first);
}

TEST_CASE("run_ga reports are internally consistent") {
  const OrthogonalArray arr = replicate_and_shuffle(parity_check_array(3), 2, 8);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    GaConfig config;
    config.population_size = 40;
    config.evaluation_budget = 600;
    config.seed = seed;
    const RunReport report = run_ga(arr, 1, config);

    CHECK(report.seed == seed);
    CHECK(report.evaluations_used <= config.evaluation_budget);
    CHECK(report.success == (report.best_fitness == 0.0));
    if (!report.success) CHECK(report.evaluations_used == config.evaluation_budget);
    CHECK(minkowski_fitness(arr, report.best_mask, 1) == report.best_fitness);
    if (report.success) CHECK(is_orthogonal_array(remove_rows(arr, report.best_mask)));
    CHECK(verify_ga_result(arr, 1, report));

    REQUIRE(!report.fitness_trace.empty());
    CHECK(report.fitness_trace.front().evaluation == 1);
    CHECK(report.fitness_trace.back().best_fitness == report.best_fitness);
    for (std::size_t i = 1; i < report.fitness_trace.size(); ++i) {
      CHECK(report.fitness_trace[i].best_fitness <
            report.fitness_trace[i - 1].best_fitness);
      CHECK(report.fitness_trace[i].evaluation > report.fitness_trace[i - 1].evaluation);
    }
  }
}

TEST_CASE("a budget equal to the population size stops after initialization") {
  // strength-4 instance: a random start rarely hits an optimum, so with this
  // seed the run spends its whole budget on initialization
  const OrthogonalArray arr = replicate_and_shuffle(parity_check_array(4), 2, 1);
  GaConfig config;
  config.population_size = 500;
  config.evaluation_budget = 500;
  config.seed = 1;
  const RunReport report = run_ga(arr, 1, config);
  CHECK(!report.success);
  CHECK(report.evaluations_used == 500);

  config.evaluation_budget = 50;  // smaller than the population
  const RunReport partial = run_ga(arr, 1, config);
  CHECK(!partial.success);
  CHECK(partial.evaluations_used == 50);
}

TEST_CASE("run_ga rejects non-binary arrays and bad target indices") {
  const OrthogonalArray ternary =
      OrthogonalArray::from_rows({3, 1, 3, 1, 1}, {{0}, {1}, {2}});
  GaConfig config;
  CHECK_THROWS_AS(run_ga(ternary, 1, config), std::invalid_argument);

  const OrthogonalArray arr = replicate_and_shuffle(parity_check_array(2), 2, 2);
  CHECK_THROWS_AS(run_ga(arr, 2, config), std::invalid_argument);
  CHECK_THROWS_AS(run_ga(arr, 0, config), std::invalid_argument);
}

TEST_CASE("default parameters solve the toy instance in nearly every run") {
  const OrthogonalArray arr = replicate_and_shuffle(parity_check_array(2), 2, 6);
  int successes = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GaConfig config;
    config.seed = seed;
    if (run_ga(arr, 1, config).success) ++successes;
  }
  CHECK(successes >= 29);
}

TEST_CASE("two-offspring runs keep exact budget accounting") {
  const OrthogonalArray arr = replicate_and_shuffle(parity_check_array(4), 2, 1);
  GaConfig config;
  config.population_size = 50;
  config.evaluation_budget = 101;  // odd: the final step must clamp to one child
  config.offspring_per_step = 2;
  config.seed = 1;
  const RunReport report = run_ga(arr, 1, config);
  CHECK(!report.success);
  CHECK(report.evaluations_used == 101);
  CHECK(run_ga(arr, 1, config) == report);

  config.replace_only_if_better = true;
  const RunReport conservative = run_ga(arr, 1, config);
  CHECK(conservative.evaluations_used == 101);
  CHECK(verify_ga_result(arr, 1, conservative));
}

TEST_CASE("both crossover variants and extreme mutation rates run clean") {
  const OrthogonalArray arr = replicate_and_shuffle(parity_check_array(3), 2, 13);
  for (CrossoverVariant variant :
       {CrossoverVariant::map_of_ones, CrossoverVariant::counter_based}) {
    for (double mutation : {0.0, 1.0}) {
      GaConfig config;
      config.population_size = 25;
      config.evaluation_budget = 400;
      config.crossover = variant;
      config.mutation_probability = mutation;
      config.seed = 99;
      const RunReport report = run_ga(arr, 1, config);
      CHECK(report.evaluations_used <= 400);
      CHECK(verify_ga_result(arr, 1, report));
    }
  }
}
