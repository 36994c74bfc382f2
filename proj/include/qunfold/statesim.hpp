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
#include <complex>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qunfold/core.hpp"

namespace qunfold {

enum class GateKind {
  kI,
  kX,
  kY,
  kZ,
  kH,
  kS,
  kSdg,
  kT,
  kTdg,
  kP,  // phase gate, carries an angle
  kSqrtX,
  kSqrtXdg,
  kSwap,
  kCx,   // targets = {control, target}
  kCcx,  // targets = {control, control, target}
};

/// Number of qubits the gate kind acts on (1, 2 or 3).
int gate_arity(GateKind kind);

const char* gate_name(GateKind kind);

/// One gate application inside a circuit.
struct Gate {
  GateKind kind;
  std::vector<int> targets;
  double theta = 0.0;  // kP only

  static Gate single(GateKind kind, int qubit);
  static Gate phase(double theta, int qubit);
  static Gate swap(int a, int b);
  static Gate cx(int control, int target);
  static Gate ccx(int control_a, int control_b, int target);
};

/// Dense unitary of a gate kind, exactly as tabulated: for multi-qubit
/// kinds the first listed qubit is the most significant bit of the local
/// basis index. This form exists as documentation and as the oracle for
/// unitarity and identity tests; circuit execution never builds it.
Eigen::MatrixXcd gate_unitary(GateKind kind, double theta = 0.0);

/// 2^n complex amplitudes with unit Euclidean norm.
class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(int n_qubits);

  /// Adopts the given amplitudes; they must already have norm 1 (1e-9).
  StateVector(int n_qubits, Eigen::VectorXcd amplitudes);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index size() const { return amplitudes_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

 private:
  int n_qubits_;
  Eigen::VectorXcd amplitudes_;
};

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> ops;
};

/// Applies one gate by a strided in-place update of the amplitudes of the
/// target subspace (never by forming the 2^n x 2^n operator). Qubit k is
/// bit k of the basis index. Throws BadTargetError on out-of-range or
/// repeated targets.
StateVector apply_gate(const StateVector& state, const Gate& gate);

/// Runs all gates in order, starting from |0...0>.
StateVector run_circuit(const Circuit& circuit);

/// Normalizes a desired amplitude vector to unit norm. The length must be
/// a power of two; throws ZeroVectorError when every entry is zero.
StateVector initialize_amplitudes(const Eigen::VectorXcd& desired);
StateVector initialize_amplitudes(const Eigen::VectorXd& desired);

/// The harmonic-oscillator ground-state profile exp(-x^2/2) sampled at
/// x = 2(z + 0.5 - 2^(n-1)) / 2^(n-1) across the basis index range;
/// un-normalized input for a Gaussian truth state.
Eigen::VectorXd gaussian_amplitudes(int n_qubits);

/// Born probabilities |a_i|^2 as a probability-mass CountVector.
CountVector exact_probabilities(const StateVector& state);

// Circuit text format: one gate per line, `GATE q0 [q1 [q2]]`, angles as
// `P <theta> <qubit>`, `#` starts a comment. Gate names match gate_name()
// case-insensitively. The first line may set the width explicitly with
// `qubits <n>`; otherwise it is 1 + the highest target mentioned.
Circuit parse_circuit(std::istream& in);
Circuit load_circuit(const std::filesystem::path& path);

}  // namespace qunfold
