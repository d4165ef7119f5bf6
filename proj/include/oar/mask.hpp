#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "oar/rng.hpp"

namespace oar {

/// Constant-weight removal mask over the rows of an array: a 0/1 vector of
/// fixed length whose 1-positions mark the rows to delete. Keeps both the bit
/// vector and the sorted list of 1-positions (the "map of ones") in sync.
class RemovalMask {
 public:
  RemovalMask() = default;

  static RemovalMask from_bits(std::vector<std::uint8_t> bits);
  static RemovalMask from_ones(int length, std::vector<int> ones);
  static RemovalMask from_string(std::string_view text);  // e.g. "0110"

  int length() const { return static_cast<int>(bits_.size()); }
  int weight() const { return static_cast<int>(ones_.size()); }
  bool test(int pos) const { return bits_[static_cast<std::size_t>(pos)] != 0; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  const std::vector<int>& map_of_ones() const { return ones_; }
  std::string to_string() const;

  friend bool operator==(const RemovalMask&, const RemovalMask&) = default;

 private:
  std::vector<std::uint8_t> bits_;
  std::vector<int> ones_;
};

/// Uniformly random mask with exactly `weight` ones. Requires 0 < weight < length.
RemovalMask random_balanced_mask(int length, int weight, Rng& rng);

}  // namespace oar
