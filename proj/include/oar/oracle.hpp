#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "oar/fitness.hpp"
#include "oar/ga.hpp"
#include "oar/mask.hpp"
#include "oar/oa.hpp"

namespace oar {

struct OracleOptions {
  std::uint64_t enumeration_cap = 100'000'000;
  std::uint64_t optimal_mask_cap = 10'000;  // listed masks; the exact count is kept
  double exponent = 2.0;
  Aggregation aggregation = Aggregation::global_norm;
  int workers = 1;  // contiguous rank ranges; the result is worker-count independent
};

/// Exact result of enumerating every weight-p removal mask of one instance.
struct OracleReport {
  OaParams instance_params;
  int target_index = 0;
  int removal_weight = 0;
  std::uint64_t masks_enumerated = 0;
  double min_fitness = 0.0;
  std::uint64_t optimal_count = 0;            // masks achieving min_fitness
  std::vector<RemovalMask> optimal_masks;     // colex order, truncated at the cap
  // (fitness rounded to 6 decimals, count), ascending by fitness
  std::vector<std::pair<double, std::uint64_t>> fitness_histogram;

  friend bool operator==(const OracleReport&, const OracleReport&) = default;
};

/// Scores all C(N, p) masks in colexicographic order. Refuses instances whose
/// search space exceeds options.enumeration_cap.
OracleReport exhaustive_search(const OrthogonalArray& arr, int target_index,
                               const OracleOptions& options = {});

/// Recomputes the report's best fitness through the plain fitness path and
/// cross-checks the success claim against is_orthogonal_array.
bool verify_ga_result(const OrthogonalArray& arr, int target_index,
                      const RunReport& report, double exponent = 2.0,
                      Aggregation aggregation = Aggregation::global_norm);

}  // namespace oar
