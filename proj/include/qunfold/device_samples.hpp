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

#include "qunfold/core.hpp"

namespace qunfold {

// Readout responses measured on a public 5-qubit superconducting machine
// at 8000 shots per calibration circuit, plus counts recorded when running
// a |Psi+> Bell pair on the same device. They drive the `demo` subcommand
// and double as well-characterized inputs in tests.

/// 2x2 single-qubit readout response.
ResponseMatrix sample_response_1q();

/// 4x4 two-qubit readout response.
ResponseMatrix sample_response_2q();

/// Measured counts for |+> = H|0> on one qubit, 8000 shots.
Eigen::VectorXd sample_plus_measurement();

/// Measured counts for the |Psi+> Bell pair, 8000 shots. The ideal truth
/// is [0, 4000, 4000, 0].
Eigen::VectorXd sample_bell_measurement();

/// A second |Psi+> readout that happens to invert to an all-physical
/// (non-negative) estimate.
Eigen::VectorXd sample_bell_measurement_feasible();

}  // namespace qunfold
