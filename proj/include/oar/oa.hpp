#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oar/mask.hpp"

namespace oar {

/// Parameters of an N x k array over an s-symbol alphabet with declared
/// strength t and index lambda = N / s^t.
struct OaParams {
  int n_rows = 0;   // N
  int n_cols = 0;   // k
  int alphabet = 2; // s
  int strength = 0; // t
  int index = 0;    // lambda

  std::int64_t tuple_space() const;  // s^t
  void validate() const;             // throws std::invalid_argument on violation

  friend bool operator==(const OaParams&, const OaParams&) = default;
};

/// An N x k symbol matrix carrying its declared (s, t, lambda). Rows are an
/// indexed list, not a set: duplicate rows are meaningful and addressed by
/// position. The balancedness property itself is checked separately by
/// is_orthogonal_array, so candidate (non-OA) arrays are representable too.
class OrthogonalArray {
 public:
  OrthogonalArray(OaParams params, std::vector<std::uint8_t> cells);  // row-major
  static OrthogonalArray from_rows(OaParams params,
                                   const std::vector<std::vector<std::uint8_t>>& rows);

  const OaParams& params() const { return params_; }
  int n_rows() const { return params_.n_rows; }
  int n_cols() const { return params_.n_cols; }
  std::uint8_t at(int r, int c) const {
    return cells_[static_cast<std::size_t>(r) * static_cast<std::size_t>(params_.n_cols) +
                  static_cast<std::size_t>(c)];
  }
  std::span<const std::uint8_t> row(int r) const {
    return {cells_.data() +
                static_cast<std::size_t>(r) * static_cast<std::size_t>(params_.n_cols),
            static_cast<std::size_t>(params_.n_cols)};
  }
  const std::vector<std::uint8_t>& cells() const { return cells_; }

  friend bool operator==(const OrthogonalArray&, const OrthogonalArray&) = default;

 private:
  OaParams params_;
  std::vector<std::uint8_t> cells_;
};

/// Occurrence counts of the s^t symbol tuples in one t-column projection.
/// Tuples are read base-s with the lowest column index as the most
/// significant digit.
struct TupleCountTable {
  std::vector<int> column_subset;    // sorted ascending, 0-based
  std::vector<std::int64_t> counts;  // s^t entries

  friend bool operator==(const TupleCountTable&, const TupleCountTable&) = default;
};

/// The (2^t) x (t+1) binary array whose first t columns list all binary
/// t-vectors in lexicographic order and whose last column is their XOR.
OrthogonalArray parity_check_array(int strength);

/// `index` stacked copies of `base`, rows then permuted uniformly at random
/// by a Fisher-Yates shuffle seeded with `seed`.
OrthogonalArray replicate_and_shuffle(const OrthogonalArray& base, int index,
                                      std::uint64_t seed);

TupleCountTable tuple_counts(const OrthogonalArray& arr,
                             std::span<const int> column_subset);

/// True iff every t-column projection contains each tuple exactly
/// N / s^t times (false outright when N is not a multiple of s^t).
bool is_orthogonal_array(const OrthogonalArray& arr);

/// Deletes the rows at the mask's 1-positions, keeping the rest in order.
/// The mask weight must be a positive multiple of s^t that leaves a final
/// index of at least 1.
OrthogonalArray remove_rows(const OrthogonalArray& arr, const RemovalMask& mask);

// Text format: line 1 is "N k s t", then N lines of k space-separated symbols.
std::string serialize(const OrthogonalArray& arr);
OrthogonalArray parse_oa(std::string_view text);
OrthogonalArray read_oa_file(const std::string& path);
void write_oa_file(const OrthogonalArray& arr, const std::string& path);

}  // namespace oar
