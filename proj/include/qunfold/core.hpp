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

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qunfold/errors.hpp"

namespace qunfold {

/// Hard cap on register width. 2^24 already means ~2.2 TB for a dense
/// response matrix; anything larger is a caller bug, not a use case.
inline constexpr int kMaxQubits = 24;

/// Which end of a bitstring label qubit 0 sits on.
///
/// The internal canonical ordering everywhere in this library is kQ0Lsb:
/// basis index i assigns qubit k the bit (i >> k) & 1. kQ0Msb is a
/// presentation convention in which the label reads q0 q1 ... q(n-1) from
/// the left, i.e. the plain zero-padded binary rendering of the index.
enum class BitOrdering { kQ0Lsb, kQ0Msb };

/// 2^n_qubits, with the register-width guard applied.
std::size_t basis_dimension(int n_qubits);

/// A computational basis state of an n-qubit register.
struct BasisIndex {
  BasisIndex(std::uint64_t value, int n_qubits);

  std::uint64_t value;
  int n_qubits;
};

/// Zero-padded bitstring for a basis state. Under kQ0Msb this is the plain
/// binary rendering of the index; kQ0Lsb is that string reversed.
std::string index_to_label(BasisIndex index, BitOrdering ordering);

/// Inverse of index_to_label. Throws BadLabelError on empty, overlong, or
/// non-binary labels.
std::uint64_t label_to_index(std::string_view label, BitOrdering ordering);

/// Real-valued histogram over the 2^n computational basis states.
///
/// Holds true counts t, measured counts m, unfolded estimates t-hat, or
/// probability mass, depending on context. Entries may be negative
/// (unfolding by matrix inversion can produce negative bins) but must be
/// finite. Immutable after construction.
class CountVector {
 public:
  CountVector(int n_qubits, Eigen::VectorXd counts);

  static CountVector zeros(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index size() const { return counts_.size(); }
  double operator[](Eigen::Index i) const { return counts_[i]; }
  const Eigen::VectorXd& counts() const { return counts_; }
  double total() const { return counts_.sum(); }

 private:
  int n_qubits_;
  Eigen::VectorXd counts_;
};

/// Column-stochastic readout response: entries_(i, j) = P(measured basis
/// state i | prepared basis state j). Identity in the noiseless limit.
/// Every column of a readout channel sums to 1 (no events are lost, so the
/// per-column efficiency is exactly 1); construction enforces this within
/// `column_tolerance`. Immutable after construction.
class ResponseMatrix {
 public:
  /// Tolerance for matrices assembled in memory from counts.
  static constexpr double kAssemblyTolerance = 1e-9;
  /// Looser tolerance for matrices loaded from text files.
  static constexpr double kLoadTolerance = 1e-6;

  ResponseMatrix(int n_qubits, Eigen::MatrixXd entries,
                 double column_tolerance = kAssemblyTolerance);

  static ResponseMatrix identity(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dimension() const { return entries_.rows(); }
  double operator()(Eigen::Index measured, Eigen::Index prepared) const {
    return entries_(measured, prepared);
  }
  const Eigen::MatrixXd& entries() const { return entries_; }

 private:
  int n_qubits_;
  Eigen::MatrixXd entries_;
};

/// Divides each column of a raw count matrix by its own total.
///
/// `shots` is the nominal number of shots per calibration circuit; column
/// totals must match it up to rounding. Throws ZeroColumnError if a column
/// total is 0 (a missing calibration run).
ResponseMatrix normalize_columns(const Eigen::MatrixXd& raw_counts,
                                 double shots);

/// Places labeled counts at their basis indices in ascending index order,
/// filling absent labels with 0. All labels must share one length n; the
/// register width is inferred from it. Duplicate labels are rejected.
CountVector sorted_counts_from_labeled(
    const std::vector<std::pair<std::string, double>>& labeled,
    BitOrdering ordering);

// ---------------------------------------------------------------------
// File formats.
//
// Counts: CSV with header `index,label,count`, one row per basis state in
// ascending index order (labels rendered kQ0Msb). A flat JSON object
// {label: count} is also accepted on load. Response matrices: CSV,
// row-major, no header. Both formats may carry leading `# key=value`
// comment lines; writers use them to embed n_qubits and reproducibility
// metadata, loaders skip them.
// ---------------------------------------------------------------------

/// Reproducibility metadata embedded as `# key=value` comments.
struct ArtifactMeta {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> config_hash;
};

void save_counts_csv(const CountVector& counts,
                     const std::filesystem::path& path,
                     const ArtifactMeta& meta = {});
CountVector load_counts(const std::filesystem::path& path);

void save_response_csv(const ResponseMatrix& response,
                       const std::filesystem::path& path,
                       const ArtifactMeta& meta = {});
ResponseMatrix load_response_csv(const std::filesystem::path& path);

/// Plain numeric CSV matrix (general dimension, `#` comments allowed).
/// Shared by the quantum and synthetic worlds; load_response_csv adds the
/// power-of-two and stochasticity checks on top of this.
void save_matrix_csv(const Eigen::MatrixXd& matrix,
                     const std::filesystem::path& path,
                     const ArtifactMeta& meta = {});
Eigen::MatrixXd load_matrix_csv(const std::filesystem::path& path);

}  // namespace qunfold
