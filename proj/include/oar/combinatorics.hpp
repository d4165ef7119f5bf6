#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace oar {

/// Exact C(n, k), or nullopt when the value does not fit in 64 bits.
std::optional<std::uint64_t> binomial(int n, int k);

/// log10 of C(n, k), for messages about spaces too large to enumerate.
double binomial_log10(int n, int k);

/// All t-element sorted subsets of {0, ..., n_cols-1} in lexicographic order.
std::vector<std::vector<int>> column_subsets(int n_cols, int t);

/// Rank of a sorted index set in the colexicographic order (combinatorial
/// number system): rank = sum_i C(comb[i], i+1).
std::uint64_t colex_rank(const std::vector<int>& comb);

/// Inverse of colex_rank for fixed subset size p.
std::vector<int> colex_unrank(std::uint64_t rank, int p);

/// Enumerates the weight-p subsets of {0, ..., n-1} in colexicographic order.
class ColexCombinations {
 public:
  ColexCombinations(int n, int p);
  ColexCombinations(int n, int p, std::uint64_t start_rank);

  const std::vector<int>& current() const { return comb_; }
  bool done() const { return done_; }
  void next();

 private:
  int n_ = 0;
  int p_ = 0;
  bool done_ = false;
  std::vector<int> comb_;
};

}  // namespace oar
