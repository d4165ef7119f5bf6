#include "oar/oa.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "oar/combinatorics.hpp"
#include "oar/rng.hpp"

namespace oar {

std::int64_t OaParams::tuple_space() const {
  std::int64_t space = 1;
  for (int i = 0; i < strength; ++i) {
    space *= alphabet;
    if (space > (std::int64_t{1} << 40)) {
      throw std::invalid_argument("OaParams: s^t out of supported range");
    }
  }
  return space;
}

void OaParams::validate() const {
  if (n_rows < 1) throw std::invalid_argument("OaParams: n_rows must be positive");
  if (n_cols < 1) throw std::invalid_argument("OaParams: n_cols must be positive");
  if (alphabet < 2) throw std::invalid_argument("OaParams: alphabet must be at least 2");
  if (alphabet > 256) throw std::invalid_argument("OaParams: alphabet out of supported range");
  if (strength < 1) throw std::invalid_argument("OaParams: strength must be positive");
  if (strength > n_cols) {
    throw std::invalid_argument("OaParams: strength must not exceed n_cols");
  }
  if (index < 1) throw std::invalid_argument("OaParams: index must be positive");
  if (static_cast<std::int64_t>(index) * tuple_space() != n_rows) {
    throw std::invalid_argument("OaParams: n_rows must equal index * alphabet^strength");
  }
}

OrthogonalArray::OrthogonalArray(OaParams params, std::vector<std::uint8_t> cells)
    : params_(params), cells_(std::move(cells)) {
  params_.validate();
  const std::size_t expected = static_cast<std::size_t>(params_.n_rows) *
                               static_cast<std::size_t>(params_.n_cols);
  if (cells_.size() != expected) {
    throw std::invalid_argument("OrthogonalArray: cell count does not match N*k");
  }
  for (std::uint8_t v : cells_) {
    if (v >= params_.alphabet) {
      throw std::invalid_argument("OrthogonalArray: symbol outside alphabet");
    }
  }
}

OrthogonalArray OrthogonalArray::from_rows(
    OaParams params, const std::vector<std::vector<std::uint8_t>>& rows) {
  std::vector<std::uint8_t> cells;
  cells.reserve(rows.size() * static_cast<std::size_t>(params.n_cols));
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != params.n_cols) {
      throw std::invalid_argument("OrthogonalArray: row width does not match n_cols");
    }
    cells.insert(cells.end(), row.begin(), row.end());
  }
  return {params, std::move(cells)};
}

OrthogonalArray parity_check_array(int strength) {
  if (strength < 1) {
    throw std::invalid_argument("parity_check_array: strength must be at least 1");
  }
  if (strength > 20) {
    throw std::invalid_argument("parity_check_array: strength out of supported range");
  }
  const int n = 1 << strength;
  const int k = strength + 1;
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
  for (int i = 0; i < n; ++i) {
    std::uint8_t parity = 0;
    for (int c = 0; c < strength; ++c) {
      const auto bit = static_cast<std::uint8_t>((i >> (strength - 1 - c)) & 1);
      cells[static_cast<std::size_t>(i) * static_cast<std::size_t>(k) +
            static_cast<std::size_t>(c)] = bit;
      parity ^= bit;
    }
    cells[static_cast<std::size_t>(i) * static_cast<std::size_t>(k) +
          static_cast<std::size_t>(strength)] = parity;
  }
  return {{n, k, 2, strength, 1}, std::move(cells)};
}

OrthogonalArray replicate_and_shuffle(const OrthogonalArray& base, int index,
                                      std::uint64_t seed) {
  if (index < 1) {
    throw std::invalid_argument("replicate_and_shuffle: index must be at least 1");
  }
  const auto& base_params = base.params();
  const std::int64_t total = static_cast<std::int64_t>(base_params.n_rows) * index;
  if (total > 100'000'000) {
    throw std::invalid_argument("replicate_and_shuffle: result too large");
  }

  std::vector<int> order(static_cast<std::size_t>(total));
  for (std::int64_t r = 0; r < total; ++r) {
    order[static_cast<std::size_t>(r)] = static_cast<int>(r % base_params.n_rows);
  }
  Rng rng(seed);
  rng.shuffle(order);

  std::vector<std::uint8_t> cells;
  cells.reserve(static_cast<std::size_t>(total) *
                static_cast<std::size_t>(base_params.n_cols));
  for (int src : order) {
    const auto row = base.row(src);
    cells.insert(cells.end(), row.begin(), row.end());
  }
  OaParams params = base_params;
  params.n_rows = static_cast<int>(total);
  params.index = base_params.index * index;
  return {params, std::move(cells)};
}

TupleCountTable tuple_counts(const OrthogonalArray& arr,
                             std::span<const int> column_subset) {
  const auto& params = arr.params();
  if (static_cast<int>(column_subset.size()) != params.strength) {
    throw std::invalid_argument("tuple_counts: subset size must equal the strength");
  }
  int prev = -1;
  for (int c : column_subset) {
    if (c <= prev || c >= params.n_cols) {
      throw std::invalid_argument(
          "tuple_counts: columns must be strictly increasing and in range");
    }
    prev = c;
  }
  TupleCountTable table;
  table.column_subset.assign(column_subset.begin(), column_subset.end());
  table.counts.assign(static_cast<std::size_t>(params.tuple_space()), 0);
  for (int r = 0; r < params.n_rows; ++r) {
    std::int64_t value = 0;
    for (int c : column_subset) value = value * params.alphabet + arr.at(r, c);
    ++table.counts[static_cast<std::size_t>(value)];
  }
  return table;
}

bool is_orthogonal_array(const OrthogonalArray& arr) {
  const auto& params = arr.params();
  const std::int64_t space = params.tuple_space();
  if (params.n_rows % space != 0) return false;
  const std::int64_t lambda = params.n_rows / space;
  for (const auto& subset : column_subsets(params.n_cols, params.strength)) {
    const TupleCountTable table = tuple_counts(arr, subset);
    for (std::int64_t count : table.counts) {
      if (count != lambda) return false;
    }
  }
  return true;
}

OrthogonalArray remove_rows(const OrthogonalArray& arr, const RemovalMask& mask) {
  const auto& params = arr.params();
  if (mask.length() != params.n_rows) {
    throw std::invalid_argument("remove_rows: mask length must equal the row count");
  }
  const std::int64_t space = params.tuple_space();
  const int weight = mask.weight();
  if (weight <= 0 || weight % space != 0) {
    throw std::invalid_argument(
        "remove_rows: mask weight must be a positive multiple of s^t");
  }
  const int target_index = params.index - static_cast<int>(weight / space);
  if (target_index < 1) {
    throw std::invalid_argument("remove_rows: removal would drop the index below 1");
  }

  std::vector<std::uint8_t> cells;
  cells.reserve(static_cast<std::size_t>(params.n_rows - weight) *
                static_cast<std::size_t>(params.n_cols));
  for (int r = 0; r < params.n_rows; ++r) {
    if (mask.test(r)) continue;
    const auto row = arr.row(r);
    cells.insert(cells.end(), row.begin(), row.end());
  }
  OaParams out = params;
  out.n_rows = params.n_rows - weight;
  out.index = target_index;
  return {out, std::move(cells)};
}

std::string serialize(const OrthogonalArray& arr) {
  const auto& params = arr.params();
  std::ostringstream out;
  out << params.n_rows << ' ' << params.n_cols << ' ' << params.alphabet << ' '
      << params.strength << '\n';
  for (int r = 0; r < params.n_rows; ++r) {
    for (int c = 0; c < params.n_cols; ++c) {
      if (c) out << ' ';
      out << static_cast<int>(arr.at(r, c));
    }
    out << '\n';
  }
  return out.str();
}

namespace {

std::vector<long> parse_int_line(const std::string& line, const char* what) {
  std::istringstream in(line);
  std::vector<long> values;
  long v = 0;
  while (in >> v) values.push_back(v);
  if (!in.eof()) {
    throw std::runtime_error(std::string("parse_oa: malformed ") + what + ": '" + line + "'");
  }
  return values;
}

}  // namespace

OrthogonalArray parse_oa(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("parse_oa: empty input");
  const auto header = parse_int_line(line, "header");
  if (header.size() != 4) {
    throw std::runtime_error("parse_oa: header must be 'N k s t'");
  }
  const long n = header[0], k = header[1], s = header[2], t = header[3];
  if (n < 1 || k < 1 || s < 2 || t < 1) {
    throw std::runtime_error("parse_oa: header values out of range");
  }
  std::int64_t space = 1;
  for (long i = 0; i < t; ++i) {
    space *= s;
    if (space > n) break;
  }
  if (space <= 0 || n % space != 0) {
    throw std::runtime_error("parse_oa: N is not a multiple of s^t");
  }
  OaParams params{static_cast<int>(n), static_cast<int>(k), static_cast<int>(s),
                  static_cast<int>(t), static_cast<int>(n / space)};

  std::vector<std::uint8_t> cells;
  cells.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
  for (long r = 0; r < n; ++r) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("parse_oa: fewer rows than the header declares");
    }
    const auto symbols = parse_int_line(line, "row");
    if (static_cast<long>(symbols.size()) != k) {
      throw std::runtime_error("parse_oa: row width does not match the header");
    }
    for (long v : symbols) {
      if (v < 0 || v >= s) {
        throw std::runtime_error("parse_oa: symbol outside the alphabet");
      }
      cells.push_back(static_cast<std::uint8_t>(v));
    }
  }
  // at most one trailing blank line
  bool saw_blank = false;
  while (std::getline(in, line)) {
    if (!line.empty() || saw_blank) {
      throw std::runtime_error("parse_oa: trailing content after the last row");
    }
    saw_blank = true;
  }
  return {params, std::move(cells)};
}

OrthogonalArray read_oa_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_oa_file: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_oa(buffer.str());
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_oa_file(const OrthogonalArray& arr, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_oa_file: cannot open " + path);
  out << serialize(arr);
  if (!out) throw std::runtime_error("write_oa_file: write failed for " + path);
}

}  // namespace oar
