#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <random>
#include <vector>

namespace oar {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for stream `stream` of a base seed. Streams are independent, and
/// adding streams never perturbs earlier ones.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(splitmix64(base) + 0x9e3779b97f4a7c15ULL * stream);
}

/// Deterministic RNG wrapper. mt19937_64 plus hand-rolled bounded draws, so a
/// given seed yields the same stream on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Unbiased uniform draw in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    assert(bound > 0);
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % bound;
    }
  }

  /// Uniform in [0, 1) with 53 bits of precision.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool coin() { return (engine_() & 1ULL) != 0; }

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[below(i)]);
    }
  }

  /// k distinct indices from [0, n), in random draw order.
  std::vector<int> sample_distinct(int n, int k) {
    assert(0 <= k && k <= n);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k));
    if (2 * k > n) {
      // dense case: partial Fisher-Yates over the full index range
      std::vector<int> pool(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
      for (int i = 0; i < k; ++i) {
        const std::size_t j =
            static_cast<std::size_t>(i) + below(static_cast<std::uint64_t>(n - i));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
        out.push_back(pool[static_cast<std::size_t>(i)]);
      }
    } else {
      while (static_cast<int>(out.size()) < k) {
        const int candidate = static_cast<int>(below(static_cast<std::uint64_t>(n)));
        if (std::find(out.begin(), out.end(), candidate) == out.end()) {
          out.push_back(candidate);
        }
      }
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace oar
