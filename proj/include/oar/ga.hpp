#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "oar/fitness.hpp"
#include "oar/mask.hpp"
#include "oar/oa.hpp"
#include "oar/rng.hpp"

namespace oar {

enum class CrossoverVariant { map_of_ones, counter_based };

struct GaConfig {
  int population_size = 500;
  int tournament_size = 3;
  double mutation_probability = 0.2;
  std::int64_t evaluation_budget = 100'000;
  CrossoverVariant crossover = CrossoverVariant::map_of_ones;
  std::uint64_t seed = 1;
  double minkowski_exponent = 2.0;
  Aggregation aggregation = Aggregation::global_norm;
  // Steady-state scheme switches; defaults are the plain scheme: one child
  // per step that unconditionally replaces the tournament's worst member.
  bool replace_only_if_better = false;
  int offspring_per_step = 1;  // 1 or 2; with 2, children fill the two worst slots

  void validate() const;

  friend bool operator==(const GaConfig&, const GaConfig&) = default;
};

struct Individual {
  RemovalMask mask;
  double fitness = 0.0;
};
using Population = std::vector<Individual>;

struct TracePoint {
  std::int64_t evaluation = 0;  // 1-based count of evaluations performed so far
  double best_fitness = 0.0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct RunReport {
  double best_fitness = 0.0;
  RemovalMask best_mask;
  bool success = false;
  std::int64_t evaluations_used = 0;
  std::uint64_t seed = 0;
  std::vector<TracePoint> fitness_trace;  // best-so-far improvements

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// Weight-preserving crossover on the maps of ones: each child slot randomly
/// copies one parent's position for that slot, falling back to the other
/// parent's on duplicates; slots where both candidates are taken are filled
/// afterwards by draws without replacement from the unused positions of the
/// parents' union. The child's ones are always a subset of that union.
RemovalMask map_of_ones_crossover(const RemovalMask& parent_a, const RemovalMask& parent_b,
                                  Rng& rng);

/// Weight-preserving crossover with ones/zeros counters: each locus copies a
/// uniformly chosen parent's bit until one counter saturates, after which the
/// remaining loci are filled with the complementary value.
RemovalMask counter_based_crossover(const RemovalMask& parent_a,
                                    const RemovalMask& parent_b, Rng& rng);

/// Exchanges the values at one random 1-position and one random 0-position.
RemovalMask swap_mutation(const RemovalMask& mask, Rng& rng);

using FitnessFn = std::function<double(const RemovalMask&)>;

struct StepResult {
  std::vector<Individual> children;  // evaluated offspring, in creation order
  std::vector<int> replaced;         // population slots the children targeted
};

/// One steady-state step: draw tournament_size distinct members, mate the two
/// fittest, evaluate the offspring and place it in the tournament's worst
/// slot (the two worst slots when two offspring are configured). Ties rank by
/// the uniformly random draw order.
StepResult steady_state_step(Population& population, const FitnessFn& fitness,
                             const GaConfig& config, Rng& rng, int max_offspring = -1);

/// Full GA run against one array: random constant-weight initialization, then
/// steady-state steps until the evaluation budget is exhausted or a
/// zero-fitness mask is found. Deterministic for a fixed config.
RunReport run_ga(const OrthogonalArray& arr, int target_index, const GaConfig& config);

}  // namespace oar
