// Acceptance suite: one line per criterion, nonzero exit if any gating
// criterion fails. Criterion 7 is observational and never gates.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oar/combinatorics.hpp"
#include "oar/experiment.hpp"
#include "oar/fitness.hpp"
#include "oar/ga.hpp"
#include "oar/oa.hpp"
#include "oar/oracle.hpp"

using namespace oar;

namespace {

int failures = 0;

class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {
    start_ = std::chrono::steady_clock::now();
  }

  void expect(bool condition, const std::string& detail) {
    if (!condition) {
      ok_ = false;
      details_ += (details_.empty() ? "" : "; ") + detail;
    }
  }

  void note(const std::string& text) {
    details_ += (details_.empty() ? "" : "; ") + text;
  }

  void finish(bool gating = true) {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::ostringstream line;
    if (gating) {
      line << (ok_ ? "[PASS] " : "[FAIL] ") << name_;
    } else {
      line << "[REPORT] " << name_;
    }
    line << " (" << seconds << "s)";
    if (!details_.empty()) line << "  -- " << details_;
    std::cout << line.str() << '\n' << std::flush;
    if (gating && !ok_) ++failures;
  }

 private:
  std::string name_;
  bool ok_ = true;
  std::string details_;
  std::chrono::steady_clock::time_point start_;
};

constexpr std::uint64_t kSeed = 1;
constexpr std::uint64_t kInstanceSeed = 1;

ExperimentSpec grid_base() {
  ExperimentSpec spec;       // GA defaults: pop 500, tournament 3,
  spec.runs = 30;            // mutation 0.2, budget 100000, map-of-ones
  spec.ga.seed = kSeed;
  spec.instance_seed = kInstanceSeed;
  return spec;
}

std::string fitness_tally(const std::vector<double>& values) {
  std::map<double, int> buckets;
  for (double v : values) ++buckets[std::round(v * 1e6) / 1e6];
  std::ostringstream out;
  bool first = true;
  for (const auto& [value, count] : buckets) {
    if (!first) out << ", ";
    out << value << " x" << count;
    first = false;
  }
  return out.str();
}

}  // namespace

int main() {
  // 1. parity-check construction verifies at every strength 1..8, index 1
  {
    Criterion c("criterion 1: parity-check arrays verify for t = 1..8");
    for (int t = 1; t <= 8; ++t) {
      const OrthogonalArray arr = parity_check_array(t);
      c.expect(arr.params().index == 1, "index != 1 at t=" + std::to_string(t));
      c.expect(is_orthogonal_array(arr), "verification failed at t=" + std::to_string(t));
    }
    c.finish();
  }

  const OrthogonalArray toy2 = replicate_and_shuffle(parity_check_array(2), 2, kInstanceSeed);
  const OrthogonalArray toy3 = replicate_and_shuffle(parity_check_array(3), 2, kInstanceSeed);

  // 2. zero fitness <=> orthogonal array, across all 70 masks of the toy instance
  {
    Criterion c("criterion 2: zero-fitness equivalence over all 70 masks");
    int enumerated = 0;
    for (ColexCombinations it(8, 4); !it.done(); it.next()) {
      const RemovalMask mask = RemovalMask::from_ones(8, it.current());
      const bool zero = minkowski_fitness(toy2, mask, 1) == 0.0;
      const bool reduced_is_oa = is_orthogonal_array(remove_rows(toy2, mask));
      c.expect(zero == reduced_is_oa, "mismatch at mask " + mask.to_string());
      ++enumerated;
    }
    c.expect(enumerated == 70, "expected 70 masks, saw " + std::to_string(enumerated));
    c.finish();
  }

  // 3. oracle ground truth on the toy instances; 16 optima predicted at t=2
  OracleReport oracle2, oracle3;
  {
    Criterion c("criterion 3: oracle ground truth (t=2 and t=3 instances)");
    oracle2 = exhaustive_search(toy2, 1);
    c.expect(oracle2.masks_enumerated == 70, "t=2 mask count");
    c.expect(oracle2.min_fitness == 0.0, "t=2 minimum fitness");
    c.expect(!oracle2.optimal_masks.empty(), "t=2 optimal set empty");
    c.expect(oracle2.optimal_count == 16,
             "t=2 optima: expected 16, got " + std::to_string(oracle2.optimal_count));
    oracle3 = exhaustive_search(toy3, 1);
    c.expect(oracle3.masks_enumerated == 12870, "t=3 mask count");
    c.expect(oracle3.min_fitness == 0.0, "t=3 minimum fitness");
    c.expect(!oracle3.optimal_masks.empty(), "t=3 optimal set empty");
    c.finish();
  }

  // 4. operator weight preservation, 10^4 applications per operator and size
  {
    Criterion c("criterion 4: operators preserve the weight (10^4 trials each)");
    Rng rng(kSeed);
    for (const auto& [n, p] : std::vector<std::pair<int, int>>{{32, 16}, {64, 32}}) {
      int weight_violations = 0;
      int distance_violations = 0;
      for (int trial = 0; trial < 10'000; ++trial) {
        const RemovalMask a = random_balanced_mask(n, p, rng);
        const RemovalMask b = random_balanced_mask(n, p, rng);
        if (map_of_ones_crossover(a, b, rng).weight() != p) ++weight_violations;
        if (counter_based_crossover(a, b, rng).weight() != p) ++weight_violations;
        const RemovalMask mutated = swap_mutation(a, rng);
        if (mutated.weight() != p) ++weight_violations;
        int distance = 0;
        for (int i = 0; i < n; ++i) distance += (a.test(i) != mutated.test(i));
        if (distance != 2) ++distance_violations;
      }
      c.expect(weight_violations == 0, "weight violations at N=" + std::to_string(n));
      c.expect(distance_violations == 0, "swap distance != 2 at N=" + std::to_string(n));
    }
    c.finish();
  }

  // the full strength-4 grid with default parameters, shared by criteria 5-7
  const std::vector<BatchSummary> grid = run_table1(grid_base());
  const BatchSummary* cell21 = nullptr;
  const BatchSummary* cell42 = nullptr;
  for (const BatchSummary& summary : grid) {
    if (summary.spec.start_index == 2 && summary.spec.target_index == 1) cell21 = &summary;
    if (summary.spec.start_index == 4 && summary.spec.target_index == 2) cell42 = &summary;
  }

  // 5. the smallest grid cell succeeds in at least half the runs, median 0
  {
    Criterion c("criterion 5: (lambda 2 -> 1) succeeds in >= 15/30 runs with median 0");
    c.expect(cell21 != nullptr, "cell missing");
    if (cell21) {
      c.note("successes " + std::to_string(cell21->success_count) + "/30");
      c.expect(cell21->success_count >= 15,
               "success count " + std::to_string(cell21->success_count) + " < 15");
      c.expect(cell21->median_best_fitness == 0.0, "median best fitness not 0");
    }
    c.finish();
  }

  // 6. hardness ordering: (4 -> 2) does not beat (2 -> 1)
  {
    Criterion c("criterion 6: success rate of (4 -> 2) <= success rate of (2 -> 1)");
    c.expect(cell21 != nullptr && cell42 != nullptr, "cells missing");
    if (cell21 && cell42) {
      c.note("(4->2) " + std::to_string(cell42->success_count) + "/30 vs (2->1) " +
             std::to_string(cell21->success_count) + "/30");
      c.expect(cell42->success_count <= cell21->success_count, "ordering violated");
    }
    c.finish();
  }

  // 7. observational: non-zero best fitness values per cell (no gate). Runs
  // that do reach 0 are summarized by the best-so-far level they escaped
  // last, which is where a weaker search would have stalled. The tally is
  // repeated under the per-block-sum aggregation switch, whose value scale
  // differs.
  {
    Criterion c("criterion 7: non-zero best-fitness distribution per cell");
    const auto tally = [&c](const std::vector<BatchSummary>& cells, const char* tag) {
      std::uint64_t nonzero_runs = 0;
      std::uint64_t near_707 = 0;
      std::uint64_t plateau_runs = 0;
      std::uint64_t plateau_near_707 = 0;
      for (const BatchSummary& summary : cells) {
        std::vector<double> nonzero;
        std::vector<double> plateaus;
        for (const RunReport& run : summary.per_run) {
          if (!run.success) {
            nonzero.push_back(run.best_fitness);
            ++nonzero_runs;
            if (std::abs(run.best_fitness - 7.07) < 0.01) ++near_707;
          } else if (run.fitness_trace.size() >= 2) {
            const double level =
                run.fitness_trace[run.fitness_trace.size() - 2].best_fitness;
            plateaus.push_back(level);
            ++plateau_runs;
            if (std::abs(level - 7.07) < 0.01) ++plateau_near_707;
          }
        }
        std::ostringstream label;
        label << tag << "(" << summary.spec.start_index << "->"
              << summary.spec.target_index << ") final "
              << (nonzero.empty() ? "none" : fitness_tally(nonzero)) << " | last plateau "
              << (plateaus.empty() ? "none" : fitness_tally(plateaus));
        c.note(label.str());
      }
      c.note(std::string(tag) + std::to_string(near_707) + "/" +
             std::to_string(nonzero_runs) + " non-zero finals near 7.07, " +
             std::to_string(plateau_near_707) + "/" + std::to_string(plateau_runs) +
             " pre-optimal plateaus near 7.07");
    };
    tally(grid, "global-norm ");
    ExperimentSpec per_block = grid_base();
    per_block.ga.aggregation = Aggregation::per_block_sum;
    tally(run_table1(per_block), "per-block-sum ");
    c.finish(/*gating=*/false);
  }

  // 8. GA runs never beat the oracle and solve the toy instance almost always
  {
    Criterion c("criterion 8: GA soundness against the oracle");
    int toy_successes = 0;
    for (int run = 0; run < 30; ++run) {
      GaConfig config;
      config.seed = derive_seed(kSeed, static_cast<std::uint64_t>(run));
      const RunReport report2 = run_ga(toy2, 1, config);
      c.expect(report2.best_fitness >= oracle2.min_fitness, "t=2 run beat the oracle");
      if (report2.success) ++toy_successes;
      const RunReport report3 = run_ga(toy3, 1, config);
      c.expect(report3.best_fitness >= oracle3.min_fitness, "t=3 run beat the oracle");
    }
    c.note("toy successes " + std::to_string(toy_successes) + "/30");
    c.expect(toy_successes >= 29,
             "expected >= 29/30 toy successes, got " + std::to_string(toy_successes));
    c.finish();
  }

  // 9. identical specs yield identical reports, wall time aside
  {
    Criterion c("criterion 9: batch reports are deterministic");
    ExperimentSpec spec;
    spec.strength = 3;
    spec.start_index = 2;
    spec.target_index = 1;
    spec.runs = 3;
    spec.mode = RunMode::both;
    spec.ga.population_size = 100;
    spec.ga.evaluation_budget = 2000;
    spec.ga.seed = kSeed;
    spec.instance_seed = kInstanceSeed;
    const std::string first = strip_wall_time(to_json(run_batch(spec))).dump();
    const std::string second = strip_wall_time(to_json(run_batch(spec))).dump();
    c.expect(first == second, "reports differ");
    c.finish();
  }

  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all gating criteria passed\n";
  return 0;
}
