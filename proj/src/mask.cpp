#include "oar/mask.hpp"

#include <algorithm>
#include <stdexcept>

namespace oar {

RemovalMask RemovalMask::from_bits(std::vector<std::uint8_t> bits) {
  RemovalMask mask;
  mask.bits_ = std::move(bits);
  for (std::size_t i = 0; i < mask.bits_.size(); ++i) {
    if (mask.bits_[i] > 1) {
      throw std::invalid_argument("RemovalMask: bits must be 0 or 1");
    }
    if (mask.bits_[i]) mask.ones_.push_back(static_cast<int>(i));
  }
  return mask;
}

RemovalMask RemovalMask::from_ones(int length, std::vector<int> ones) {
  if (length < 0) throw std::invalid_argument("RemovalMask: negative length");
  std::sort(ones.begin(), ones.end());
  RemovalMask mask;
  mask.bits_.assign(static_cast<std::size_t>(length), 0);
  int prev = -1;
  for (int pos : ones) {
    if (pos < 0 || pos >= length) {
      throw std::invalid_argument("RemovalMask: position out of range");
    }
    if (pos == prev) throw std::invalid_argument("RemovalMask: duplicate position");
    mask.bits_[static_cast<std::size_t>(pos)] = 1;
    prev = pos;
  }
  mask.ones_ = std::move(ones);
  return mask;
}

RemovalMask RemovalMask::from_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("RemovalMask: string must contain only 0 and 1");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return from_bits(std::move(bits));
}

std::string RemovalMask::to_string() const {
  std::string out(bits_.size(), '0');
  for (int pos : ones_) out[static_cast<std::size_t>(pos)] = '1';
  return out;
}

RemovalMask random_balanced_mask(int length, int weight, Rng& rng) {
  if (weight <= 0 || weight >= length) {
    throw std::invalid_argument("random_balanced_mask: need 0 < weight < length");
  }
  return RemovalMask::from_ones(length, rng.sample_distinct(length, weight));
}

}  // namespace oar
