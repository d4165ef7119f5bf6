#include "oar/fitness.hpp"

#include <cmath>
#include <stdexcept>

#include "oar/combinatorics.hpp"

namespace oar {

namespace {

void check_mask_against_target(const OaParams& params, const RemovalMask& mask,
                               int target_index) {
  if (mask.length() != params.n_rows) {
    throw std::invalid_argument("fitness: mask length must equal the row count");
  }
  if (target_index < 1) {
    throw std::invalid_argument("fitness: target index must be at least 1");
  }
  if (target_index >= params.index) {
    throw std::invalid_argument("fitness: target index must be below the array's index");
  }
  const std::int64_t kept = params.n_rows - mask.weight();
  if (kept != static_cast<std::int64_t>(target_index) * params.tuple_space()) {
    throw std::invalid_argument("fitness: mask weight inconsistent with the target index");
  }
}

void check_exponent(double exponent) {
  if (!(exponent >= 1.0)) {
    throw std::invalid_argument("fitness: exponent must be at least 1");
  }
}

}  // namespace

DeviationVector deviation_vector(const OrthogonalArray& arr, const RemovalMask& mask,
                                 int target_index) {
  const auto& params = arr.params();
  check_mask_against_target(params, mask, target_index);
  const OrthogonalArray reduced = remove_rows(arr, mask);

  DeviationVector deviation;
  deviation.tuple_space = static_cast<int>(params.tuple_space());
  deviation.column_subsets = column_subsets(params.n_cols, params.strength);
  deviation.entries.reserve(deviation.column_subsets.size() *
                            static_cast<std::size_t>(deviation.tuple_space));
  for (const auto& subset : deviation.column_subsets) {
    const TupleCountTable table = tuple_counts(reduced, subset);
    for (std::int64_t count : table.counts) {
      deviation.entries.push_back(count - target_index);
    }
  }
  return deviation;
}

double minkowski_of_deviation(const DeviationVector& deviation, double exponent,
                              Aggregation aggregation) {
  check_exponent(exponent);
  const std::size_t n_blocks = deviation.column_subsets.size();
  const auto space = static_cast<std::size_t>(deviation.tuple_space);

  if (exponent == 2.0) {
    if (aggregation == Aggregation::global_norm) {
      std::int64_t sum_squares = 0;
      for (std::int64_t d : deviation.entries) sum_squares += d * d;
      return std::sqrt(static_cast<double>(sum_squares));
    }
    double total = 0.0;
    for (std::size_t b = 0; b < n_blocks; ++b) {
      std::int64_t block = 0;
      for (std::size_t i = 0; i < space; ++i) {
        const std::int64_t d = deviation.entries[b * space + i];
        block += d * d;
      }
      total += std::sqrt(static_cast<double>(block));
    }
    return total;
  }

  if (aggregation == Aggregation::global_norm) {
    double sum = 0.0;
    for (std::int64_t d : deviation.entries) {
      sum += std::pow(static_cast<double>(std::abs(d)), exponent);
    }
    return std::pow(sum, 1.0 / exponent);
  }
  double total = 0.0;
  for (std::size_t b = 0; b < n_blocks; ++b) {
    double block = 0.0;
    for (std::size_t i = 0; i < space; ++i) {
      const std::int64_t d = deviation.entries[b * space + i];
      block += std::pow(static_cast<double>(std::abs(d)), exponent);
    }
    total += std::pow(block, 1.0 / exponent);
  }
  return total;
}

double minkowski_fitness(const OrthogonalArray& arr, const RemovalMask& mask,
                         int target_index, double exponent, Aggregation aggregation) {
  check_exponent(exponent);
  return minkowski_of_deviation(deviation_vector(arr, mask, target_index), exponent,
                                aggregation);
}

FitnessEvaluator::FitnessEvaluator(const OrthogonalArray& arr, int target_index,
                                   double exponent, Aggregation aggregation)
    : n_rows_(arr.n_rows()),
      target_index_(target_index),
      exponent_(exponent),
      aggregation_(aggregation) {
  check_exponent(exponent);
  const auto& params = arr.params();
  if (target_index < 1 || target_index >= params.index) {
    throw std::invalid_argument(
        "FitnessEvaluator: target index must satisfy 1 <= lambda' < lambda");
  }
  tuple_space_ = static_cast<int>(params.tuple_space());
  removal_weight_ = (params.index - target_index) * tuple_space_;

  const auto subsets = column_subsets(params.n_cols, params.strength);
  n_subsets_ = static_cast<int>(subsets.size());
  row_tuples_.resize(static_cast<std::size_t>(n_rows_) *
                     static_cast<std::size_t>(n_subsets_));
  for (int r = 0; r < n_rows_; ++r) {
    for (int j = 0; j < n_subsets_; ++j) {
      std::uint32_t value = 0;
      for (int c : subsets[static_cast<std::size_t>(j)]) {
        value = value * static_cast<std::uint32_t>(params.alphabet) + arr.at(r, c);
      }
      row_tuples_[static_cast<std::size_t>(r) * static_cast<std::size_t>(n_subsets_) +
                  static_cast<std::size_t>(j)] = value;
    }
  }
  counts_.assign(static_cast<std::size_t>(n_subsets_) *
                     static_cast<std::size_t>(tuple_space_),
                 0);
}

double FitnessEvaluator::operator()(const RemovalMask& mask) {
  if (mask.length() != n_rows_) {
    throw std::invalid_argument("FitnessEvaluator: mask length must equal the row count");
  }
  if (mask.weight() != removal_weight_) {
    throw std::invalid_argument(
        "FitnessEvaluator: mask weight inconsistent with the target index");
  }
  return evaluate_bits(mask.bits().data());
}

double FitnessEvaluator::evaluate_bits(const std::uint8_t* removed) {
  std::fill(counts_.begin(), counts_.end(), 0);
  const std::uint32_t* tuples = row_tuples_.data();
  for (int r = 0; r < n_rows_; ++r) {
    if (removed[r]) continue;
    const std::uint32_t* row = tuples + static_cast<std::size_t>(r) *
                                            static_cast<std::size_t>(n_subsets_);
    for (int j = 0; j < n_subsets_; ++j) {
      ++counts_[static_cast<std::size_t>(j) * static_cast<std::size_t>(tuple_space_) +
                row[j]];
    }
  }

  // aggregation mirrors minkowski_of_deviation, block-major order
  if (exponent_ == 2.0) {
    if (aggregation_ == Aggregation::global_norm) {
      std::int64_t sum_squares = 0;
      for (std::int32_t count : counts_) {
        const std::int64_t d = count - target_index_;
        sum_squares += d * d;
      }
      return std::sqrt(static_cast<double>(sum_squares));
    }
    double total = 0.0;
    for (int j = 0; j < n_subsets_; ++j) {
      std::int64_t block = 0;
      for (int i = 0; i < tuple_space_; ++i) {
        const std::int64_t d =
            counts_[static_cast<std::size_t>(j) * static_cast<std::size_t>(tuple_space_) +
                    static_cast<std::size_t>(i)] -
            target_index_;
        block += d * d;
      }
      total += std::sqrt(static_cast<double>(block));
    }
    return total;
  }

  if (aggregation_ == Aggregation::global_norm) {
    double sum = 0.0;
    for (std::int32_t count : counts_) {
      const auto d = static_cast<double>(std::abs(count - target_index_));
      sum += std::pow(d, exponent_);
    }
    return std::pow(sum, 1.0 / exponent_);
  }
  double total = 0.0;
  for (int j = 0; j < n_subsets_; ++j) {
    double block = 0.0;
    for (int i = 0; i < tuple_space_; ++i) {
      const auto d = static_cast<double>(std::abs(
          counts_[static_cast<std::size_t>(j) * static_cast<std::size_t>(tuple_space_) +
                  static_cast<std::size_t>(i)] -
          target_index_));
      block += std::pow(d, exponent_);
    }
    total += std::pow(block, 1.0 / exponent_);
  }
  return total;
}

}  // namespace oar
