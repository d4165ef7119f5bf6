#include "oar/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace oar {

std::optional<std::uint64_t> binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return std::uint64_t{0};
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (c > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(c);
}

double binomial_log10(int n, int k) {
  if (n < 0 || k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) /
         std::log(10.0);
}

std::vector<std::vector<int>> column_subsets(int n_cols, int t) {
  if (t < 0 || t > n_cols) {
    throw std::invalid_argument("column_subsets: need 0 <= t <= n_cols");
  }
  std::vector<std::vector<int>> out;
  std::vector<int> comb(static_cast<std::size_t>(t));
  std::iota(comb.begin(), comb.end(), 0);
  for (;;) {
    out.push_back(comb);
    int i = t - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n_cols - t + i) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < t; ++j) {
      comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

std::uint64_t colex_rank(const std::vector<int>& comb) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < comb.size(); ++i) {
    const auto c = binomial(comb[i], static_cast<int>(i) + 1);
    if (!c) throw std::overflow_error("colex_rank: rank exceeds 64 bits");
    rank += *c;
  }
  return rank;
}

std::vector<int> colex_unrank(std::uint64_t rank, int p) {
  if (p < 0) throw std::invalid_argument("colex_unrank: p must be non-negative");
  std::vector<int> comb(static_cast<std::size_t>(p));
  std::uint64_t rest = rank;
  for (int i = p; i >= 1; --i) {
    // largest m with C(m, i) <= rest; C(i-1, i) = 0 makes m = i-1 a valid start
    int m = i - 1;
    for (;;) {
      const auto next = binomial(m + 1, i);
      if (!next || *next > rest) break;
      ++m;
    }
    comb[static_cast<std::size_t>(i - 1)] = m;
    rest -= binomial(m, i).value();
  }
  return comb;
}

ColexCombinations::ColexCombinations(int n, int p) : ColexCombinations(n, p, 0) {}

ColexCombinations::ColexCombinations(int n, int p, std::uint64_t start_rank)
    : n_(n), p_(p) {
  if (p < 0 || p > n) {
    done_ = true;
    return;
  }
  comb_ = colex_unrank(start_rank, p);
  if (p > 0 && comb_.back() >= n) done_ = true;
}

void ColexCombinations::next() {
  if (done_) return;
  if (p_ == 0) {
    done_ = true;
    return;
  }
  int i = 0;
  while (i + 1 < p_ &&
         comb_[static_cast<std::size_t>(i)] + 1 == comb_[static_cast<std::size_t>(i + 1)]) {
    comb_[static_cast<std::size_t>(i)] = i;
    ++i;
  }
  ++comb_[static_cast<std::size_t>(i)];
  if (comb_.back() >= n_) done_ = true;
}

}  // namespace oar
