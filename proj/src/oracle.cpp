#include "oar/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "oar/combinatorics.hpp"

namespace oar {

namespace {

struct Partial {
  double min_fitness = std::numeric_limits<double>::infinity();
  std::uint64_t optimal_count = 0;
  std::vector<RemovalMask> optimal_masks;
  std::map<std::int64_t, std::uint64_t> histogram;  // key: round(fitness * 1e6)
};

Partial scan_range(const OrthogonalArray& arr, int target_index,
                   const OracleOptions& options, std::uint64_t start_rank,
                   std::uint64_t count) {
  FitnessEvaluator evaluator(arr, target_index, options.exponent, options.aggregation);
  const int n = arr.n_rows();
  const int p = evaluator.removal_weight();

  Partial part;
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
  ColexCombinations it(n, p, start_rank);
  for (std::uint64_t i = 0; i < count; ++i, it.next()) {
    std::fill(bits.begin(), bits.end(), 0);
    for (int pos : it.current()) bits[static_cast<std::size_t>(pos)] = 1;
    const double fitness = evaluator.evaluate_bits(bits.data());
    ++part.histogram[std::llround(fitness * 1e6)];
    if (fitness < part.min_fitness) {
      part.min_fitness = fitness;
      part.optimal_count = 0;
      part.optimal_masks.clear();
    }
    if (fitness == part.min_fitness) {
      ++part.optimal_count;
      if (part.optimal_masks.size() < options.optimal_mask_cap) {
        part.optimal_masks.push_back(RemovalMask::from_ones(n, it.current()));
      }
    }
  }
  return part;
}

}  // namespace

OracleReport exhaustive_search(const OrthogonalArray& arr, int target_index,
                               const OracleOptions& options) {
  const auto& params = arr.params();
  if (target_index < 1 || target_index >= params.index) {
    throw std::invalid_argument(
        "exhaustive_search: target index must satisfy 1 <= lambda' < lambda");
  }
  if (!(options.exponent >= 1.0)) {
    throw std::invalid_argument("exhaustive_search: exponent must be at least 1");
  }
  const auto space = static_cast<int>(params.tuple_space());
  const int p = (params.index - target_index) * space;
  const int n = params.n_rows;

  const auto total = binomial(n, p);
  if (!total || *total > options.enumeration_cap) {
    std::ostringstream msg;
    msg << "exhaustive_search: C(" << n << "," << p << ") ";
    if (total) {
      msg << "= " << *total;
    } else {
      msg << "~ 10^" << std::fixed << std::setprecision(1) << binomial_log10(n, p);
    }
    msg << " masks exceed the enumeration cap of " << options.enumeration_cap;
    throw std::runtime_error(msg.str());
  }

  const int workers = static_cast<int>(std::min<std::uint64_t>(
      static_cast<std::uint64_t>(std::max(options.workers, 1)), *total));
  std::vector<Partial> parts(static_cast<std::size_t>(workers));
  if (workers == 1) {
    parts[0] = scan_range(arr, target_index, options, 0, *total);
  } else {
    const std::uint64_t chunk = *total / workers;
    const std::uint64_t extra = *total % workers;
    std::vector<std::thread> threads;
    std::uint64_t start = 0;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t count = chunk + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
      threads.emplace_back([&, w, start, count] {
        parts[static_cast<std::size_t>(w)] =
            scan_range(arr, target_index, options, start, count);
      });
      start += count;
    }
    for (auto& t : threads) t.join();
  }

  OracleReport report;
  report.instance_params = params;
  report.target_index = target_index;
  report.removal_weight = p;
  report.masks_enumerated = *total;

  report.min_fitness = std::numeric_limits<double>::infinity();
  for (const Partial& part : parts) {
    report.min_fitness = std::min(report.min_fitness, part.min_fitness);
  }
  std::map<std::int64_t, std::uint64_t> histogram;
  for (const Partial& part : parts) {
    if (part.min_fitness == report.min_fitness) {
      report.optimal_count += part.optimal_count;
      for (const RemovalMask& mask : part.optimal_masks) {
        if (report.optimal_masks.size() >= options.optimal_mask_cap) break;
        report.optimal_masks.push_back(mask);
      }
    }
    for (const auto& [key, count] : part.histogram) histogram[key] += count;
  }
  report.fitness_histogram.reserve(histogram.size());
  for (const auto& [key, count] : histogram) {
    report.fitness_histogram.emplace_back(static_cast<double>(key) / 1e6, count);
  }
  return report;
}

bool verify_ga_result(const OrthogonalArray& arr, int target_index,
                      const RunReport& report, double exponent, Aggregation aggregation) {
  double recomputed = 0.0;
  try {
    recomputed = minkowski_fitness(arr, report.best_mask, target_index, exponent,
                                   aggregation);
  } catch (const std::exception&) {
    return false;
  }
  if (recomputed != report.best_fitness) return false;
  if (report.success != (report.best_fitness == 0.0)) return false;
  if (report.success && !is_orthogonal_array(remove_rows(arr, report.best_mask))) {
    return false;
  }
  return true;
}

}  // namespace oar
