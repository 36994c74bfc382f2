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
#include <vector>

#include "qunfold/core.hpp"
#include "qunfold/statesim.hpp"

namespace qunfold {

/// The 2^n basis-state preparation circuits: circuit j applies an X gate
/// on exactly the set-bit positions of j, nothing else.
struct CalibrationPlan {
  int n_qubits = 0;
  std::vector<Circuit> circuits;
};

CalibrationPlan make_calibration_plan(int n_qubits);

/// Measured counts of the calibration circuits, possibly from a partial
/// batch. Column j holds the counts observed when basis state j was
/// prepared; each present column totals `shots`.
class CalibrationRun {
 public:
  CalibrationRun(int n_qubits, double shots);

  int n_qubits() const { return n_qubits_; }
  double shots() const { return shots_; }
  Eigen::Index dimension() const {
    return static_cast<Eigen::Index>(columns_.size());
  }

  void set_column(std::uint64_t prepared, CountVector counts);
  bool has_column(std::uint64_t prepared) const;
  const CountVector& column(std::uint64_t prepared) const;

  bool complete() const;
  std::vector<std::uint64_t> missing_columns() const;

 private:
  int n_qubits_;
  double shots_;
  std::vector<std::optional<CountVector>> columns_;
};

/// Simulates (a slice of) the plan through a known true channel. Each
/// circuit gets the sub-seed derive_seed(master_seed, circuit_index), so
/// any batch split reproduces the unbatched run bitwise.
CalibrationRun run_plan_through_channel(const CalibrationPlan& plan,
                                        const ResponseMatrix& true_channel,
                                        std::int64_t shots,
                                        std::uint64_t master_seed,
                                        std::uint64_t first_circuit = 0,
                                        std::optional<std::uint64_t>
                                            circuit_count = std::nullopt);

/// Column j of the result = counts of circuit j / shots. Throws
/// IncompleteRunError listing the missing columns.
ResponseMatrix assemble_response(const CalibrationRun& run);

/// Union of two batches. Requires equal n_qubits and shots; a column
/// present in both must match exactly, otherwise ConflictingColumnError.
CalibrationRun merge_runs(const CalibrationRun& a, const CalibrationRun& b);

/// Kronecker product of per-qubit 2x2 column-stochastic factors, in the
/// library's qubit-k-is-bit-k index convention. Used to synthesize large
/// test channels with uncorrelated per-qubit readout noise.
ResponseMatrix tensor_response(const std::vector<Eigen::Matrix2d>& per_qubit);

/// Seeded per-qubit factors with diagonals drawn uniformly from
/// [0.89, 0.97], the magnitude observed on real hardware.
std::vector<Eigen::Matrix2d> random_qubit_factors(int n_qubits,
                                                  std::uint64_t seed);

/// One heatmap cell: percent = 100 * R(measured, true) / column_sum(true).
struct HeatmapCell {
  std::string true_label;
  std::string measured_label;
  double percent;
};

std::vector<HeatmapCell> export_heatmap_data(
    const ResponseMatrix& response,
    BitOrdering ordering = BitOrdering::kQ0Msb);

/// CSV with header `true,measured,percent`.
void save_heatmap_csv(const ResponseMatrix& response,
                      const std::filesystem::path& path,
                      BitOrdering ordering = BitOrdering::kQ0Msb);

// A CalibrationRun persists as a directory: meta.json holding n_qubits,
// shots, seed and the completeness bitmap, plus one counts CSV per present
// column named by its prepared label.
void save_calibration_run(const CalibrationRun& run,
                          const std::filesystem::path& directory,
                          std::optional<std::uint64_t> seed = std::nullopt);
CalibrationRun load_calibration_run(const std::filesystem::path& directory);

}  // namespace qunfold
