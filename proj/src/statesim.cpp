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

#include "qunfold/statesim.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace qunfold {

namespace {

using cplx = std::complex<double>;

constexpr double kNormTolerance = 1e-9;

struct KindInfo {
  GateKind kind;
  const char* name;
  int arity;
};

constexpr KindInfo kKinds[] = {
    {GateKind::kI, "I", 1},        {GateKind::kX, "X", 1},
    {GateKind::kY, "Y", 1},        {GateKind::kZ, "Z", 1},
    {GateKind::kH, "H", 1},        {GateKind::kS, "S", 1},
    {GateKind::kSdg, "SDG", 1},    {GateKind::kT, "T", 1},
    {GateKind::kTdg, "TDG", 1},    {GateKind::kP, "P", 1},
    {GateKind::kSqrtX, "SX", 1},   {GateKind::kSqrtXdg, "SXDG", 1},
    {GateKind::kSwap, "SWAP", 2},  {GateKind::kCx, "CX", 2},
    {GateKind::kCcx, "CCX", 3},
};

const KindInfo& info(GateKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k;
  }
  throw Error("unknown gate kind");
}

Eigen::Matrix2cd single_qubit_unitary(GateKind kind, double theta) {
  const cplx i{0.0, 1.0};
  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix2cd u;
  switch (kind) {
    case GateKind::kI:
      u << 1, 0, 0, 1;
      break;
    case GateKind::kX:
      u << 0, 1, 1, 0;
      break;
    case GateKind::kY:
      u << 0, -i, i, 0;
      break;
    case GateKind::kZ:
      u << 1, 0, 0, -1;
      break;
    case GateKind::kH:
      u << r, r, r, -r;
      break;
    case GateKind::kS:
      u << 1, 0, 0, i;
      break;
    case GateKind::kSdg:
      u << 1, 0, 0, -i;
      break;
    case GateKind::kT:
      u << 1, 0, 0, std::exp(i * (std::numbers::pi / 4));
      break;
    case GateKind::kTdg:
      u << 1, 0, 0, std::exp(-i * (std::numbers::pi / 4));
      break;
    case GateKind::kP:
      u << 1, 0, 0, std::exp(i * theta);
      break;
    case GateKind::kSqrtX:
      u << 0.5 * (1.0 + i), 0.5 * (1.0 - i), 0.5 * (1.0 - i), 0.5 * (1.0 + i);
      break;
    case GateKind::kSqrtXdg:
      u << 0.5 * (1.0 - i), 0.5 * (1.0 + i), 0.5 * (1.0 + i), 0.5 * (1.0 - i);
      break;
    default:
      throw Error("not a single-qubit gate");
  }
  return u;
}

void check_targets(const Gate& gate, int n_qubits) {
  const int arity = gate_arity(gate.kind);
  if (static_cast<int>(gate.targets.size()) != arity) {
    throw BadTargetError(std::string(gate_name(gate.kind)) + " takes " +
                         std::to_string(arity) + " targets");
  }
  for (std::size_t a = 0; a < gate.targets.size(); ++a) {
    const int q = gate.targets[a];
    if (q < 0 || q >= n_qubits) {
      throw BadTargetError("target " + std::to_string(q) +
                           " out of range for " + std::to_string(n_qubits) +
                           " qubits");
    }
    for (std::size_t b = a + 1; b < gate.targets.size(); ++b) {
      if (gate.targets[b] == q) {
        throw BadTargetError(std::string(gate_name(gate.kind)) +
                             " targets must be distinct");
      }
    }
  }
}

}  // namespace

int gate_arity(GateKind kind) { return info(kind).arity; }

const char* gate_name(GateKind kind) { return info(kind).name; }

Gate Gate::single(GateKind kind, int qubit) {
  if (gate_arity(kind) != 1 || kind == GateKind::kP) {
    throw Error("Gate::single is for fixed single-qubit kinds");
  }
  return Gate{kind, {qubit}, 0.0};
}

Gate Gate::phase(double theta, int qubit) {
  return Gate{GateKind::kP, {qubit}, theta};
}

Gate Gate::swap(int a, int b) { return Gate{GateKind::kSwap, {a, b}, 0.0}; }

Gate Gate::cx(int control, int target) {
  return Gate{GateKind::kCx, {control, target}, 0.0};
}

Gate Gate::ccx(int control_a, int control_b, int target) {
  return Gate{GateKind::kCcx, {control_a, control_b, target}, 0.0};
}

Eigen::MatrixXcd gate_unitary(GateKind kind, double theta) {
  switch (kind) {
    case GateKind::kSwap: {
      Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
      u(0, 0) = u(3, 3) = 1;
      u(1, 2) = u(2, 1) = 1;
      return u;
    }
    case GateKind::kCx: {
      Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(4, 4);
      u(2, 2) = u(3, 3) = 0;
      u(2, 3) = u(3, 2) = 1;
      return u;
    }
    case GateKind::kCcx: {
      Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(8, 8);
      u(6, 6) = u(7, 7) = 0;
      u(6, 7) = u(7, 6) = 1;
      return u;
    }
    default:
      return single_qubit_unitary(kind, theta);
  }
}

StateVector::StateVector(int n_qubits)
    : n_qubits_(n_qubits),
      amplitudes_(Eigen::VectorXcd::Zero(
          static_cast<Eigen::Index>(basis_dimension(n_qubits)))) {
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  const auto dim = basis_dimension(n_qubits_);
  if (static_cast<std::size_t>(amplitudes_.size()) != dim) {
    throw DimensionMismatchError("state vector for " +
                                 std::to_string(n_qubits_) +
                                 " qubits needs " + std::to_string(dim) +
                                 " amplitudes");
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kNormTolerance) {
    throw Error("state vector is not normalized");
  }
}

StateVector apply_gate(const StateVector& state, const Gate& gate) {
  check_targets(gate, state.n_qubits());
  Eigen::VectorXcd amps = state.amplitudes();
  const std::uint64_t dim = static_cast<std::uint64_t>(amps.size());

  switch (gate.kind) {
    case GateKind::kSwap: {
      const std::uint64_t a = std::uint64_t{1} << gate.targets[0];
      const std::uint64_t b = std::uint64_t{1} << gate.targets[1];
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & a) && !(i & b)) std::swap(amps[i], amps[(i ^ a) | b]);
      }
      break;
    }
    case GateKind::kCx: {
      const std::uint64_t control = std::uint64_t{1} << gate.targets[0];
      const std::uint64_t target = std::uint64_t{1} << gate.targets[1];
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & control) && !(i & target)) std::swap(amps[i], amps[i | target]);
      }
      break;
    }
    case GateKind::kCcx: {
      const std::uint64_t controls = (std::uint64_t{1} << gate.targets[0]) |
                                     (std::uint64_t{1} << gate.targets[1]);
      const std::uint64_t target = std::uint64_t{1} << gate.targets[2];
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (((i & controls) == controls) && !(i & target)) {
          std::swap(amps[i], amps[i | target]);
        }
      }
      break;
    }
    default: {
      const Eigen::Matrix2cd u = single_qubit_unitary(gate.kind, gate.theta);
      const std::uint64_t mask = std::uint64_t{1} << gate.targets[0];
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & mask) continue;
        const cplx a0 = amps[i];
        const cplx a1 = amps[i | mask];
        amps[i] = u(0, 0) * a0 + u(0, 1) * a1;
        amps[i | mask] = u(1, 0) * a0 + u(1, 1) * a1;
      }
      break;
    }
  }
  return StateVector(state.n_qubits(), std::move(amps));
}

StateVector run_circuit(const Circuit& circuit) {
  StateVector state(circuit.n_qubits);
  for (const Gate& gate : circuit.ops) state = apply_gate(state, gate);
  return state;
}

StateVector initialize_amplitudes(const Eigen::VectorXcd& desired) {
  const double norm = desired.norm();
  if (norm == 0.0 || !std::isfinite(norm)) {
    throw ZeroVectorError("desired amplitude vector has no usable norm");
  }
  int n_qubits = 0;
  for (int n = 1; n <= kMaxQubits; ++n) {
    if (static_cast<Eigen::Index>(std::size_t{1} << n) == desired.size()) {
      n_qubits = n;
      break;
    }
  }
  if (n_qubits == 0) {
    throw DimensionMismatchError("amplitude vector length " +
                                 std::to_string(desired.size()) +
                                 " is not a power of two");
  }
  return StateVector(n_qubits, desired / norm);
}

StateVector initialize_amplitudes(const Eigen::VectorXd& desired) {
  return initialize_amplitudes(
      Eigen::VectorXcd(desired.cast<std::complex<double>>()));
}

Eigen::VectorXd gaussian_amplitudes(int n_qubits) {
  const auto dim = static_cast<Eigen::Index>(basis_dimension(n_qubits));
  const double half = static_cast<double>(dim) / 2.0;
  Eigen::VectorXd desired(dim);
  for (Eigen::Index z = 0; z < dim; ++z) {
    const double x = 2.0 * (static_cast<double>(z) + 0.5 - half) / half;
    desired[z] = std::exp(-x * x / 2.0);
  }
  return desired;
}

CountVector exact_probabilities(const StateVector& state) {
  return CountVector(state.n_qubits(),
                     state.amplitudes().cwiseAbs2());
}

Circuit parse_circuit(std::istream& in) {
  Circuit circuit;
  int max_target = -1;
  bool width_fixed = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream tokens(line);
    std::string word;
    if (!(tokens >> word)) continue;
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return std::toupper(c); });

    if (word == "QUBITS") {
      int n = 0;
      if (!(tokens >> n) || n < 1) {
        throw Error("line " + std::to_string(line_no) + ": bad qubit count");
      }
      circuit.n_qubits = n;
      width_fixed = true;
      continue;
    }

    const KindInfo* found = nullptr;
    for (const auto& k : kKinds) {
      if (word == k.name) {
        found = &k;
        break;
      }
    }
    if (!found) {
      throw Error("line " + std::to_string(line_no) + ": unknown gate \"" +
                  word + "\"");
    }
    Gate gate{found->kind, {}, 0.0};
    if (found->kind == GateKind::kP && !(tokens >> gate.theta)) {
      throw Error("line " + std::to_string(line_no) + ": P needs an angle");
    }
    for (int a = 0; a < found->arity; ++a) {
      int q = -1;
      if (!(tokens >> q)) {
        throw Error("line " + std::to_string(line_no) + ": " + found->name +
                    " needs " + std::to_string(found->arity) + " targets");
      }
      gate.targets.push_back(q);
      max_target = std::max(max_target, q);
    }
    if (std::string extra; tokens >> extra) {
      throw Error("line " + std::to_string(line_no) +
                  ": trailing token \"" + extra + "\"");
    }
    circuit.ops.push_back(std::move(gate));
  }
  if (!width_fixed) circuit.n_qubits = max_target + 1;
  if (circuit.n_qubits < 1) throw Error("circuit has no qubits");
  return circuit;
}

Circuit load_circuit(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open circuit file " + path.string());
  return parse_circuit(in);
}

}  // namespace qunfold
