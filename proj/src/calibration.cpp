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

#include "qunfold/calibration.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qunfold/sampling.hpp"

namespace qunfold {

CalibrationPlan make_calibration_plan(int n_qubits) {
  const auto dim = basis_dimension(n_qubits);
  CalibrationPlan plan;
  plan.n_qubits = n_qubits;
  plan.circuits.reserve(dim);
  for (std::uint64_t j = 0; j < dim; ++j) {
    Circuit circuit;
    circuit.n_qubits = n_qubits;
    for (int k = 0; k < n_qubits; ++k) {
      if ((j >> k) & 1u) circuit.ops.push_back(Gate::single(GateKind::kX, k));
    }
    plan.circuits.push_back(std::move(circuit));
  }
  return plan;
}

CalibrationRun::CalibrationRun(int n_qubits, double shots)
    : n_qubits_(n_qubits), shots_(shots), columns_(basis_dimension(n_qubits)) {
  if (shots <= 0.0) throw Error("shots must be positive");
}

void CalibrationRun::set_column(std::uint64_t prepared, CountVector counts) {
  if (prepared >= columns_.size()) {
    throw DimensionMismatchError("column index out of range");
  }
  if (counts.n_qubits() != n_qubits_) {
    throw DimensionMismatchError("column width does not match run");
  }
  const double slack = 0.5 + shots_ * 1e-6;
  if (std::abs(counts.total() - shots_) > slack) {
    throw Error("column " + std::to_string(prepared) + " totals " +
                std::to_string(counts.total()) + ", expected " +
                std::to_string(shots_) + " shots");
  }
  columns_[prepared] = std::move(counts);
}

bool CalibrationRun::has_column(std::uint64_t prepared) const {
  return prepared < columns_.size() && columns_[prepared].has_value();
}

const CountVector& CalibrationRun::column(std::uint64_t prepared) const {
  if (!has_column(prepared)) {
    throw IncompleteRunError("column " + std::to_string(prepared) +
                             " has no data");
  }
  return *columns_[prepared];
}

bool CalibrationRun::complete() const { return missing_columns().empty(); }

std::vector<std::uint64_t> CalibrationRun::missing_columns() const {
  std::vector<std::uint64_t> missing;
  for (std::uint64_t j = 0; j < columns_.size(); ++j) {
    if (!columns_[j].has_value()) missing.push_back(j);
  }
  return missing;
}

CalibrationRun run_plan_through_channel(
    const CalibrationPlan& plan, const ResponseMatrix& true_channel,
    std::int64_t shots, std::uint64_t master_seed, std::uint64_t first_circuit,
    std::optional<std::uint64_t> circuit_count) {
  if (true_channel.n_qubits() != plan.n_qubits) {
    throw DimensionMismatchError("channel width does not match plan");
  }
  const std::uint64_t total = plan.circuits.size();
  const std::uint64_t last =
      circuit_count ? std::min(total, first_circuit + *circuit_count) : total;

  CalibrationRun run(plan.n_qubits, static_cast<double>(shots));
  for (std::uint64_t j = first_circuit; j < last; ++j) {
    const CountVector truth =
        exact_probabilities(run_circuit(plan.circuits[j]));
    run.set_column(j, apply_channel_and_sample(truth, true_channel, shots,
                                               derive_seed(master_seed, j)));
  }
  return run;
}

ResponseMatrix assemble_response(const CalibrationRun& run) {
  const auto missing = run.missing_columns();
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << "calibration run is missing columns:";
    for (auto j : missing) msg << " " << j;
    throw IncompleteRunError(msg.str());
  }
  const Eigen::Index dim = run.dimension();
  Eigen::MatrixXd raw(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    raw.col(j) = run.column(static_cast<std::uint64_t>(j)).counts();
  }
  return normalize_columns(raw, run.shots());
}

CalibrationRun merge_runs(const CalibrationRun& a, const CalibrationRun& b) {
  if (a.n_qubits() != b.n_qubits() || a.shots() != b.shots()) {
    throw DimensionMismatchError(
        "runs to merge must share n_qubits and shots");
  }
  CalibrationRun merged(a.n_qubits(), a.shots());
  const auto dim = static_cast<std::uint64_t>(a.dimension());
  for (std::uint64_t j = 0; j < dim; ++j) {
    if (a.has_column(j) && b.has_column(j)) {
      if (!(a.column(j).counts().array() == b.column(j).counts().array())
               .all()) {
        throw ConflictingColumnError("runs disagree on column " +
                                     std::to_string(j));
      }
      merged.set_column(j, a.column(j));
    } else if (a.has_column(j)) {
      merged.set_column(j, a.column(j));
    } else if (b.has_column(j)) {
      merged.set_column(j, b.column(j));
    }
  }
  return merged;
}

ResponseMatrix tensor_response(
    const std::vector<Eigen::Matrix2d>& per_qubit) {
  const int n_qubits = static_cast<int>(per_qubit.size());
  const auto dim = static_cast<Eigen::Index>(basis_dimension(n_qubits));
  for (int k = 0; k < n_qubits; ++k) {
    const auto& f = per_qubit[static_cast<std::size_t>(k)];
    if ((f.array() < 0.0).any() ||
        std::abs(f.col(0).sum() - 1.0) > 1e-12 ||
        std::abs(f.col(1).sum() - 1.0) > 1e-12) {
      throw Error("per-qubit factor " + std::to_string(k) +
                  " is not column-stochastic");
    }
  }
  Eigen::MatrixXd entries(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      double p = 1.0;
      for (int k = 0; k < n_qubits; ++k) {
        p *= per_qubit[static_cast<std::size_t>(k)]((i >> k) & 1, (j >> k) & 1);
      }
      entries(i, j) = p;
    }
  }
  return ResponseMatrix(n_qubits, std::move(entries));
}

std::vector<Eigen::Matrix2d> random_qubit_factors(int n_qubits,
                                                  std::uint64_t seed) {
  basis_dimension(n_qubits);  // width guard
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> diagonal(0.89, 0.97);
  std::vector<Eigen::Matrix2d> factors;
  factors.reserve(static_cast<std::size_t>(n_qubits));
  for (int k = 0; k < n_qubits; ++k) {
    const double keep0 = diagonal(rng);
    const double keep1 = diagonal(rng);
    Eigen::Matrix2d f;
    f << keep0, 1.0 - keep1, 1.0 - keep0, keep1;
    factors.push_back(f);
  }
  return factors;
}

std::vector<HeatmapCell> export_heatmap_data(const ResponseMatrix& response,
                                             BitOrdering ordering) {
  const Eigen::Index dim = response.dimension();
  std::vector<HeatmapCell> cells;
  cells.reserve(static_cast<std::size_t>(dim * dim));
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double column_sum = response.entries().col(j).sum();
    for (Eigen::Index i = 0; i < dim; ++i) {
      cells.push_back(HeatmapCell{
          index_to_label(
              BasisIndex(static_cast<std::uint64_t>(j), response.n_qubits()),
              ordering),
          index_to_label(
              BasisIndex(static_cast<std::uint64_t>(i), response.n_qubits()),
              ordering),
          100.0 * response(i, j) / column_sum});
    }
  }
  return cells;
}

void save_heatmap_csv(const ResponseMatrix& response,
                      const std::filesystem::path& path,
                      BitOrdering ordering) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "true,measured,percent\n";
  for (const auto& cell : export_heatmap_data(response, ordering)) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", cell.percent);
    out << cell.true_label << "," << cell.measured_label << "," << buf << "\n";
  }
}

void save_calibration_run(const CalibrationRun& run,
                          const std::filesystem::path& directory,
                          std::optional<std::uint64_t> seed) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw IoError("cannot create " + directory.string());

  nlohmann::json meta;
  meta["n_qubits"] = run.n_qubits();
  meta["shots"] = run.shots();
  std::vector<int> bitmap;
  const auto dim = static_cast<std::uint64_t>(run.dimension());
  for (std::uint64_t j = 0; j < dim; ++j) {
    bitmap.push_back(run.has_column(j) ? 1 : 0);
  }
  meta["columns_present"] = bitmap;
  if (seed) meta["seed"] = *seed;

  std::ofstream meta_out(directory / "meta.json");
  if (!meta_out) throw IoError("cannot write meta.json");
  meta_out << meta.dump(2) << "\n";

  for (std::uint64_t j = 0; j < dim; ++j) {
    if (!run.has_column(j)) continue;
    const std::string label = index_to_label(
        BasisIndex(j, run.n_qubits()), BitOrdering::kQ0Msb);
    save_counts_csv(run.column(j), directory / (label + ".csv"));
  }
}

CalibrationRun load_calibration_run(const std::filesystem::path& directory) {
  std::ifstream meta_in(directory / "meta.json");
  if (!meta_in) {
    throw IoError("cannot open " + (directory / "meta.json").string());
  }
  nlohmann::json meta;
  try {
    meta_in >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad meta.json: " + std::string(e.what()));
  }
  CalibrationRun run(meta.at("n_qubits").get<int>(),
                     meta.at("shots").get<double>());
  const auto bitmap = meta.at("columns_present").get<std::vector<int>>();
  for (std::uint64_t j = 0; j < bitmap.size(); ++j) {
    if (!bitmap[j]) continue;
    const std::string label =
        index_to_label(BasisIndex(j, run.n_qubits()), BitOrdering::kQ0Msb);
    run.set_column(j, load_counts(directory / (label + ".csv")));
  }
  return run;
}

}  // namespace qunfold
