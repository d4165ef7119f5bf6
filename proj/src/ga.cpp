#include "oar/ga.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace oar {

void GaConfig::validate() const {
  if (population_size < 2) {
    throw std::invalid_argument("GaConfig: population_size must be at least 2");
  }
  if (tournament_size < 2 || tournament_size > population_size) {
    throw std::invalid_argument(
        "GaConfig: tournament_size must be in [2, population_size]");
  }
  if (!(mutation_probability >= 0.0 && mutation_probability <= 1.0)) {
    throw std::invalid_argument("GaConfig: mutation_probability must be in [0, 1]");
  }
  if (evaluation_budget < 1) {
    throw std::invalid_argument("GaConfig: evaluation_budget must be positive");
  }
  if (!(minkowski_exponent >= 1.0)) {
    throw std::invalid_argument("GaConfig: minkowski_exponent must be at least 1");
  }
  if (offspring_per_step != 1 && offspring_per_step != 2) {
    throw std::invalid_argument("GaConfig: offspring_per_step must be 1 or 2");
  }
  if (offspring_per_step > tournament_size) {
    throw std::invalid_argument("GaConfig: offspring_per_step exceeds tournament_size");
  }
}

namespace {

void check_parents(const RemovalMask& a, const RemovalMask& b) {
  if (a.length() != b.length()) {
    throw std::invalid_argument("crossover: parents must have the same length");
  }
  if (a.weight() != b.weight()) {
    throw std::invalid_argument("crossover: parents must have the same weight");
  }
  if (a.weight() == 0 || a.weight() == a.length()) {
    throw std::invalid_argument("crossover: degenerate parent weight");
  }
}

}  // namespace

RemovalMask map_of_ones_crossover(const RemovalMask& parent_a, const RemovalMask& parent_b,
                                  Rng& rng) {
  check_parents(parent_a, parent_b);
  const int length = parent_a.length();
  const int weight = parent_a.weight();
  const auto& ones_a = parent_a.map_of_ones();
  const auto& ones_b = parent_b.map_of_ones();

  std::vector<std::uint8_t> in_child(static_cast<std::size_t>(length), 0);
  std::vector<int> child;
  child.reserve(static_cast<std::size_t>(weight));
  int deferred = 0;
  for (int slot = 0; slot < weight; ++slot) {
    const bool pick_a = rng.coin();
    const int first = pick_a ? ones_a[static_cast<std::size_t>(slot)]
                             : ones_b[static_cast<std::size_t>(slot)];
    const int second = pick_a ? ones_b[static_cast<std::size_t>(slot)]
                              : ones_a[static_cast<std::size_t>(slot)];
    if (!in_child[static_cast<std::size_t>(first)]) {
      in_child[static_cast<std::size_t>(first)] = 1;
      child.push_back(first);
    } else if (!in_child[static_cast<std::size_t>(second)]) {
      in_child[static_cast<std::size_t>(second)] = 1;
      child.push_back(second);
    } else {
      ++deferred;
    }
  }
  if (deferred > 0) {
    // unused positions of the parents' union; always at least `deferred` many
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(length), 0);
    std::vector<int> pool;
    auto consider = [&](int pos) {
      if (!seen[static_cast<std::size_t>(pos)] && !in_child[static_cast<std::size_t>(pos)]) {
        seen[static_cast<std::size_t>(pos)] = 1;
        pool.push_back(pos);
      }
    };
    for (int pos : ones_a) consider(pos);
    for (int pos : ones_b) consider(pos);
    for (int d = 0; d < deferred; ++d) {
      const std::size_t j = static_cast<std::size_t>(d) +
                            rng.below(pool.size() - static_cast<std::size_t>(d));
      std::swap(pool[static_cast<std::size_t>(d)], pool[j]);
      child.push_back(pool[static_cast<std::size_t>(d)]);
    }
  }
  return RemovalMask::from_ones(length, std::move(child));
}

RemovalMask counter_based_crossover(const RemovalMask& parent_a,
                                    const RemovalMask& parent_b, Rng& rng) {
  check_parents(parent_a, parent_b);
  const int length = parent_a.length();
  const int weight = parent_a.weight();
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(length), 0);
  int ones = 0;
  int zeros = 0;
  int i = 0;
  for (; i < length; ++i) {
    if (ones == weight || zeros == length - weight) break;
    const std::uint8_t bit = rng.coin() ? parent_a.bits()[static_cast<std::size_t>(i)]
                                        : parent_b.bits()[static_cast<std::size_t>(i)];
    bits[static_cast<std::size_t>(i)] = bit;
    if (bit) {
      ++ones;
    } else {
      ++zeros;
    }
  }
  const std::uint8_t fill = (ones == weight) ? 0 : 1;
  for (; i < length; ++i) bits[static_cast<std::size_t>(i)] = fill;
  return RemovalMask::from_bits(std::move(bits));
}

RemovalMask swap_mutation(const RemovalMask& mask, Rng& rng) {
  const int weight = mask.weight();
  const int length = mask.length();
  if (weight == 0 || weight == length) {
    throw std::invalid_argument("swap_mutation: mask must contain both values");
  }
  const int one_pos =
      mask.map_of_ones()[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(weight)))];
  const auto zero_choice = rng.below(static_cast<std::uint64_t>(length - weight));
  int zero_pos = -1;
  std::uint64_t seen = 0;
  for (int i = 0; i < length; ++i) {
    if (!mask.test(i)) {
      if (seen == zero_choice) {
        zero_pos = i;
        break;
      }
      ++seen;
    }
  }
  std::vector<std::uint8_t> bits = mask.bits();
  bits[static_cast<std::size_t>(one_pos)] = 0;
  bits[static_cast<std::size_t>(zero_pos)] = 1;
  return RemovalMask::from_bits(std::move(bits));
}

StepResult steady_state_step(Population& population, const FitnessFn& fitness,
                             const GaConfig& config, Rng& rng, int max_offspring) {
  if (static_cast<int>(population.size()) < config.tournament_size) {
    throw std::invalid_argument("steady_state_step: population smaller than tournament");
  }
  int n_offspring = (max_offspring < 0)
                        ? config.offspring_per_step
                        : std::min(config.offspring_per_step, max_offspring);
  if (n_offspring < 1) n_offspring = 1;

  // tournament members in random draw order; stable sort keeps that order
  // within fitness ties, which is the uniform tie-break
  std::vector<int> entrants =
      rng.sample_distinct(static_cast<int>(population.size()), config.tournament_size);
  std::stable_sort(entrants.begin(), entrants.end(), [&](int lhs, int rhs) {
    return population[static_cast<std::size_t>(lhs)].fitness <
           population[static_cast<std::size_t>(rhs)].fitness;
  });
  // copies: a replacement slot may coincide with a parent slot
  const RemovalMask parent_a = population[static_cast<std::size_t>(entrants[0])].mask;
  const RemovalMask parent_b = population[static_cast<std::size_t>(entrants[1])].mask;

  StepResult result;
  for (int c = 0; c < n_offspring; ++c) {
    RemovalMask child = (config.crossover == CrossoverVariant::map_of_ones)
                            ? map_of_ones_crossover(parent_a, parent_b, rng)
                            : counter_based_crossover(parent_a, parent_b, rng);
    if (rng.unit() < config.mutation_probability) child = swap_mutation(child, rng);
    const double child_fitness = fitness(child);
    const int slot = entrants[static_cast<std::size_t>(config.tournament_size - 1 - c)];
    result.children.push_back(Individual{std::move(child), child_fitness});
    result.replaced.push_back(slot);
    if (!config.replace_only_if_better ||
        child_fitness < population[static_cast<std::size_t>(slot)].fitness) {
      population[static_cast<std::size_t>(slot)] = result.children.back();
    }
  }
  return result;
}

RunReport run_ga(const OrthogonalArray& arr, int target_index, const GaConfig& config) {
  config.validate();
  const auto& params = arr.params();
  if (params.alphabet != 2) {
    throw std::invalid_argument("run_ga: only binary arrays are supported");
  }
  if (target_index < 1 || target_index >= params.index) {
    throw std::invalid_argument("run_ga: target index must satisfy 1 <= lambda' < lambda");
  }

  FitnessEvaluator evaluator(arr, target_index, config.minkowski_exponent,
                             config.aggregation);
  const int removal_weight = evaluator.removal_weight();
  Rng rng(config.seed);

  RunReport report;
  report.seed = config.seed;
  report.best_fitness = std::numeric_limits<double>::infinity();

  std::int64_t used = 0;
  auto record = [&](const Individual& individual) {
    if (individual.fitness < report.best_fitness) {
      report.best_fitness = individual.fitness;
      report.best_mask = individual.mask;
      report.fitness_trace.push_back(TracePoint{used, individual.fitness});
    }
  };

  Population population;
  population.reserve(static_cast<std::size_t>(config.population_size));
  for (int i = 0; i < config.population_size && used < config.evaluation_budget; ++i) {
    RemovalMask mask = random_balanced_mask(params.n_rows, removal_weight, rng);
    const double fit = evaluator(mask);
    ++used;
    population.push_back(Individual{std::move(mask), fit});
    record(population.back());
    if (report.best_fitness == 0.0) break;
  }

  if (report.best_fitness != 0.0 &&
      static_cast<int>(population.size()) == config.population_size) {
    FitnessFn fitness = [&evaluator](const RemovalMask& mask) { return evaluator(mask); };
    while (used < config.evaluation_budget && report.best_fitness != 0.0) {
      const auto remaining = static_cast<int>(
          std::min<std::int64_t>(config.evaluation_budget - used, config.offspring_per_step));
      const StepResult step = steady_state_step(population, fitness, config, rng, remaining);
      for (const Individual& child : step.children) {
        ++used;
        record(child);
      }
    }
  }

  report.evaluations_used = used;
  report.success = (report.best_fitness == 0.0);
  return report;
}

}  // namespace oar
