// Copyright 2026 The qunfold authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qunfold/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qunfold {

namespace {

int infer_n_qubits(std::size_t dimension) {
  for (int n = 1; n <= kMaxQubits; ++n) {
    if ((std::size_t{1} << n) == dimension) return n;
  }
  throw Error("dimension " + std::to_string(dimension) +
              " is not 2^n for any supported register width");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Splits a CSV line on commas; no quoting (none of our formats needs it).
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

void write_meta_comments(std::ostream& out, const ArtifactMeta& meta) {
  if (meta.seed) out << "# seed=" << *meta.seed << "\n";
  if (meta.config_hash) out << "# config=" << *meta.config_hash << "\n";
}

double parse_number(const std::string& field,
                    const std::filesystem::path& path) {
  try {
    std::size_t used = 0;
    const double value = std::stod(field, &used);
    while (used < field.size() && std::isspace(
               static_cast<unsigned char>(field[used]))) {
      ++used;
    }
    if (used != field.size()) throw std::invalid_argument(field);
    return value;
  } catch (const std::exception&) {
    throw IoError(path.string() + ": bad number \"" + field + "\"");
  }
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::size_t basis_dimension(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw Error("n_qubits must be in [1, " + std::to_string(kMaxQubits) +
                "], got " + std::to_string(n_qubits));
  }
  return std::size_t{1} << n_qubits;
}

BasisIndex::BasisIndex(std::uint64_t value_in, int n_qubits_in)
    : value(value_in), n_qubits(n_qubits_in) {
  if (value >= basis_dimension(n_qubits)) {
    throw Error("basis index " + std::to_string(value) +
                " out of range for " + std::to_string(n_qubits) + " qubits");
  }
}

std::string index_to_label(BasisIndex index, BitOrdering ordering) {
  std::string label(static_cast<std::size_t>(index.n_qubits), '0');
  // Plain binary rendering: leftmost character = most significant bit.
  for (int k = 0; k < index.n_qubits; ++k) {
    if ((index.value >> k) & 1u) {
      label[static_cast<std::size_t>(index.n_qubits - 1 - k)] = '1';
    }
  }
  if (ordering == BitOrdering::kQ0Lsb) {
    std::reverse(label.begin(), label.end());
  }
  return label;
}

std::uint64_t label_to_index(std::string_view label, BitOrdering ordering) {
  if (label.empty() || label.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw BadLabelError("label length must be in [1, " +
                        std::to_string(kMaxQubits) + "], got \"" +
                        std::string(label) + "\"");
  }
  std::uint64_t value = 0;
  for (std::size_t pos = 0; pos < label.size(); ++pos) {
    char c = label[pos];
    if (c != '0' && c != '1') {
      throw BadLabelError("label \"" + std::string(label) +
                          "\" contains a character other than 0/1");
    }
    // Which index bit this character carries depends on the ordering.
    std::size_t bit = (ordering == BitOrdering::kQ0Lsb)
                          ? pos
                          : label.size() - 1 - pos;
    if (c == '1') value |= std::uint64_t{1} << bit;
  }
  return value;
}

CountVector::CountVector(int n_qubits, Eigen::VectorXd counts)
    : n_qubits_(n_qubits), counts_(std::move(counts)) {
  const auto dim = basis_dimension(n_qubits_);
  if (static_cast<std::size_t>(counts_.size()) != dim) {
    throw DimensionMismatchError(
        "count vector for " + std::to_string(n_qubits_) + " qubits needs " +
        std::to_string(dim) + " entries, got " + std::to_string(counts_.size()));
  }
  if (!counts_.allFinite()) {
    throw Error("count vector contains a non-finite entry");
  }
}

CountVector CountVector::zeros(int n_qubits) {
  return CountVector(
      n_qubits,
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis_dimension(n_qubits))));
}

ResponseMatrix::ResponseMatrix(int n_qubits, Eigen::MatrixXd entries,
                               double column_tolerance)
    : n_qubits_(n_qubits), entries_(std::move(entries)) {
  const auto dim = static_cast<Eigen::Index>(basis_dimension(n_qubits_));
  if (entries_.rows() != dim || entries_.cols() != dim) {
    throw DimensionMismatchError("response matrix for " +
                                 std::to_string(n_qubits_) +
                                 " qubits must be " + std::to_string(dim) +
                                 "x" + std::to_string(dim));
  }
  constexpr double kEntrySlack = 1e-12;
  for (Eigen::Index j = 0; j < dim; ++j) {
    double column_sum = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double v = entries_(i, j);
      if (!std::isfinite(v) || v < -kEntrySlack || v > 1.0 + kEntrySlack) {
        throw Error("response entry (" + std::to_string(i) + ", " +
                    std::to_string(j) + ") = " + std::to_string(v) +
                    " is outside [0, 1]");
      }
      column_sum += v;
    }
    if (std::abs(column_sum - 1.0) > column_tolerance) {
      throw Error("response column " + std::to_string(j) + " sums to " +
                  format_double(column_sum) + ", not 1");
    }
  }
}

ResponseMatrix ResponseMatrix::identity(int n_qubits) {
  const auto dim = static_cast<Eigen::Index>(basis_dimension(n_qubits));
  return ResponseMatrix(n_qubits, Eigen::MatrixXd::Identity(dim, dim));
}

ResponseMatrix normalize_columns(const Eigen::MatrixXd& raw_counts,
                                 double shots) {
  if (raw_counts.rows() != raw_counts.cols()) {
    throw DimensionMismatchError("raw count matrix must be square");
  }
  if (shots <= 0.0) throw Error("shots must be positive");
  const int n_qubits =
      infer_n_qubits(static_cast<std::size_t>(raw_counts.rows()));
  const Eigen::Index dim = raw_counts.rows();
  // Integer tallies match shots exactly; the slack only absorbs rounding
  // of fractional counts.
  const double shots_slack = 0.5 + shots * 1e-6;

  Eigen::MatrixXd normalized(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    if ((raw_counts.col(j).array() < 0.0).any()) {
      throw Error("raw counts must be non-negative (column " +
                  std::to_string(j) + ")");
    }
    const double total = raw_counts.col(j).sum();
    if (total == 0.0) {
      throw ZeroColumnError("calibration column " + std::to_string(j) +
                            " has zero total; missing calibration run");
    }
    if (std::abs(total - shots) > shots_slack) {
      throw Error("calibration column " + std::to_string(j) + " totals " +
                  format_double(total) + ", expected " + format_double(shots) +
                  " shots");
    }
    normalized.col(j) = raw_counts.col(j) / total;
  }
  return ResponseMatrix(n_qubits, std::move(normalized));
}

CountVector sorted_counts_from_labeled(
    const std::vector<std::pair<std::string, double>>& labeled,
    BitOrdering ordering) {
  if (labeled.empty()) throw BadLabelError("no labeled counts given");
  const std::size_t n = labeled.front().first.size();
  if (n == 0 || n > static_cast<std::size_t>(kMaxQubits)) {
    throw BadLabelError("label \"" + labeled.front().first +
                        "\" has unusable length");
  }
  Eigen::VectorXd counts =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  std::vector<bool> seen(static_cast<std::size_t>(counts.size()), false);
  for (const auto& [label, count] : labeled) {
    if (label.size() != n) {
      throw BadLabelError("label \"" + label + "\" has length " +
                          std::to_string(label.size()) + ", expected " +
                          std::to_string(n));
    }
    const std::uint64_t index = label_to_index(label, ordering);
    if (seen[index]) throw BadLabelError("duplicate label \"" + label + "\"");
    seen[index] = true;
    counts[static_cast<Eigen::Index>(index)] = count;
  }
  return CountVector(static_cast<int>(n), std::move(counts));
}

void save_counts_csv(const CountVector& counts,
                     const std::filesystem::path& path,
                     const ArtifactMeta& meta) {
  auto out = open_for_write(path);
  out << "# n_qubits=" << counts.n_qubits() << "\n";
  write_meta_comments(out, meta);
  out << "index,label,count\n";
  for (Eigen::Index i = 0; i < counts.size(); ++i) {
    out << i << ","
        << index_to_label(
               BasisIndex(static_cast<std::uint64_t>(i), counts.n_qubits()),
               BitOrdering::kQ0Msb)
        << "," << format_double(counts[i]) << "\n";
  }
}

namespace {

CountVector load_counts_json(std::istream& in,
                             const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse " + path.string() + " as JSON: " + e.what());
  }
  if (!doc.is_object()) {
    throw IoError(path.string() + ": expected a flat {label: count} object");
  }
  std::vector<std::pair<std::string, double>> labeled;
  for (const auto& [label, value] : doc.items()) {
    if (!value.is_number()) {
      throw IoError(path.string() + ": count for \"" + label +
                    "\" is not a number");
    }
    labeled.emplace_back(label, value.get<double>());
  }
  return sorted_counts_from_labeled(labeled, BitOrdering::kQ0Msb);
}

CountVector load_counts_csv(std::istream& in,
                            const std::filesystem::path& path) {
  std::string line;
  bool header_seen = false;
  std::map<Eigen::Index, double> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line.rfind("index,", 0) != 0) {
        throw IoError(path.string() + ": expected `index,label,count` header");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != 3) {
      throw IoError(path.string() + ": malformed row \"" + line + "\"");
    }
    rows[static_cast<Eigen::Index>(parse_number(fields[0], path))] =
        parse_number(fields[2], path);
  }
  if (rows.empty()) throw IoError(path.string() + ": no count rows");
  const auto dim = static_cast<Eigen::Index>(rows.size());
  Eigen::VectorXd counts(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    auto it = rows.find(i);
    if (it == rows.end()) {
      throw IoError(path.string() + ": missing row for index " +
                    std::to_string(i));
    }
    counts[i] = it->second;
  }
  return CountVector(infer_n_qubits(static_cast<std::size_t>(dim)),
                     std::move(counts));
}

}  // namespace

CountVector load_counts(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  // Sniff the format: a JSON count object starts with '{'.
  int first = in.peek();
  while (first == '\n' || first == ' ' || first == '\t' || first == '\r') {
    in.get();
    first = in.peek();
  }
  if (first == '{') return load_counts_json(in, path);
  return load_counts_csv(in, path);
}

void save_matrix_csv(const Eigen::MatrixXd& matrix,
                     const std::filesystem::path& path,
                     const ArtifactMeta& meta) {
  auto out = open_for_write(path);
  write_meta_comments(out, meta);
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (j) out << ",";
      out << format_double(matrix(i, j));
    }
    out << "\n";
  }
}

Eigen::MatrixXd load_matrix_csv(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_csv(line);
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_number(f, path));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw IoError(path.string() + ": ragged rows");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError(path.string() + ": no matrix rows");
  Eigen::MatrixXd matrix(static_cast<Eigen::Index>(rows.size()),
                         static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      matrix(i, j) = rows[static_cast<std::size_t>(i)]
                         [static_cast<std::size_t>(j)];
    }
  }
  return matrix;
}

void save_response_csv(const ResponseMatrix& response,
                       const std::filesystem::path& path,
                       const ArtifactMeta& meta) {
  auto out = open_for_write(path);
  out << "# n_qubits=" << response.n_qubits() << "\n";
  write_meta_comments(out, meta);
  const auto& entries = response.entries();
  for (Eigen::Index i = 0; i < entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries.cols(); ++j) {
      if (j) out << ",";
      out << format_double(entries(i, j));
    }
    out << "\n";
  }
}

ResponseMatrix load_response_csv(const std::filesystem::path& path) {
  Eigen::MatrixXd entries = load_matrix_csv(path);
  if (entries.rows() != entries.cols()) {
    throw IoError(path.string() + ": response matrix must be square");
  }
  const int n_qubits =
      infer_n_qubits(static_cast<std::size_t>(entries.rows()));
  return ResponseMatrix(n_qubits, std::move(entries),
                        ResponseMatrix::kLoadTolerance);
}

}  // namespace qunfold
