#pragma once

#include <cstdint>
#include <vector>

#include "oar/mask.hpp"
#include "oar/oa.hpp"

namespace oar {

/// How the per-column-subset deviation blocks combine into one value:
/// one norm over the concatenated vector (default), or the sum of
/// per-block norms.
enum class Aggregation { global_norm, per_block_sum };

/// Per t-column subset and tuple, the occurrence count in the reduced array
/// minus the target index. Blocks follow the lexicographic subset order and
/// are concatenated; each block sums to zero.
struct DeviationVector {
  std::vector<std::vector<int>> column_subsets;
  int tuple_space = 0;
  std::vector<std::int64_t> entries;  // column_subsets.size() * tuple_space
};

DeviationVector deviation_vector(const OrthogonalArray& arr, const RemovalMask& mask,
                                 int target_index);

double minkowski_of_deviation(const DeviationVector& deviation, double exponent,
                              Aggregation aggregation);

/// Minkowski distance of the reduced array's tuple-occurrence vector from the
/// all-target_index vector. Zero iff the reduced array is an orthogonal array
/// of index target_index.
double minkowski_fitness(const OrthogonalArray& arr, const RemovalMask& mask,
                         int target_index, double exponent = 2.0,
                         Aggregation aggregation = Aggregation::global_norm);

/// Scores many masks against one array cheaply: all t-column projections are
/// flattened per row up front, so one evaluation is a single pass over the
/// kept rows. Each evaluation still counts from scratch. Holds scratch
/// buffers; use one instance per thread.
class FitnessEvaluator {
 public:
  FitnessEvaluator(const OrthogonalArray& arr, int target_index, double exponent = 2.0,
                   Aggregation aggregation = Aggregation::global_norm);

  double operator()(const RemovalMask& mask);

  /// `removed` must point at n_rows 0/1 flags with exactly removal_weight()
  /// ones; 1 marks a removed row.
  double evaluate_bits(const std::uint8_t* removed);

  int n_rows() const { return n_rows_; }
  int removal_weight() const { return removal_weight_; }
  int target_index() const { return target_index_; }

 private:
  int n_rows_ = 0;
  int n_subsets_ = 0;
  int tuple_space_ = 0;
  int target_index_ = 0;
  int removal_weight_ = 0;
  double exponent_ = 2.0;
  Aggregation aggregation_ = Aggregation::global_norm;
  std::vector<std::uint32_t> row_tuples_;  // n_rows x n_subsets, row-major
  std::vector<std::int32_t> counts_;       // scratch: n_subsets x tuple_space
};

}  // namespace oar
