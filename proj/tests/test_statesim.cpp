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

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "qunfold/device_samples.hpp"
#include "qunfold/sampling.hpp"

using namespace qunfold;

namespace {

constexpr double kTight = 1e-12;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

bool exact_eq(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

// The tabulated multi-qubit unitaries index their local basis with the
// first listed qubit as the most significant bit, while basis indices in
// the simulator carry qubit k at bit k. Bridging the two means reversing
// the bit order of the amplitude index.
Eigen::VectorXcd bit_reversed(const Eigen::VectorXcd& amps, int n_qubits) {
  Eigen::VectorXcd out(amps.size());
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    std::uint64_t r = 0;
    for (int k = 0; k < n_qubits; ++k) {
      if ((static_cast<std::uint64_t>(i) >> k) & 1u) {
        r |= std::uint64_t{1} << (n_qubits - 1 - k);
      }
    }
    out[static_cast<Eigen::Index>(r)] = amps[i];
  }
  return out;
}

std::vector<GateKind> all_kinds() {
  return {GateKind::kI,    GateKind::kX,       GateKind::kY,
          GateKind::kZ,    GateKind::kH,       GateKind::kS,
          GateKind::kSdg,  GateKind::kT,       GateKind::kTdg,
          GateKind::kP,    GateKind::kSqrtX,   GateKind::kSqrtXdg,
          GateKind::kSwap, GateKind::kCx,      GateKind::kCcx};
}

}  // namespace

TEST_CASE("every gate unitary satisfies G Gdag = I") {
  for (GateKind kind : all_kinds()) {
    for (double theta : {0.0, 0.3, std::numbers::pi / 4, 5.1}) {
      const Eigen::MatrixXcd g = gate_unitary(kind, theta);
      const Eigen::MatrixXcd identity =
          Eigen::MatrixXcd::Identity(g.rows(), g.cols());
      CHECK(max_abs(g * g.adjoint() - identity) < kTight);
      if (kind != GateKind::kP) break;  // theta only matters for P
    }
  }
}

TEST_CASE("gate algebra identities hold exactly") {
  const auto S = gate_unitary(GateKind::kS);
  const auto T = gate_unitary(GateKind::kT);
  const auto Z = gate_unitary(GateKind::kZ);
  const auto X = gate_unitary(GateKind::kX);
  const auto H = gate_unitary(GateKind::kH);
  const auto SX = gate_unitary(GateKind::kSqrtX);
  CHECK(max_abs(S * S - Z) < kTight);
  CHECK(max_abs(T * T - S) < kTight);
  CHECK(max_abs(SX * SX - X) < kTight);
  CHECK(max_abs(H * X - Z * H) < kTight);

  // P specializations.
  CHECK(max_abs(gate_unitary(GateKind::kP, 0.0) -
                gate_unitary(GateKind::kI)) < kTight);
  CHECK(max_abs(gate_unitary(GateKind::kP, std::numbers::pi) - Z) < kTight);
  CHECK(max_abs(gate_unitary(GateKind::kP, std::numbers::pi / 2) - S) < kTight);
  CHECK(max_abs(gate_unitary(GateKind::kP, std::numbers::pi / 4) - T) < kTight);
  CHECK(max_abs(gate_unitary(GateKind::kSdg) - S.adjoint()) < kTight);
  CHECK(max_abs(gate_unitary(GateKind::kTdg) - T.adjoint()) < kTight);
}

TEST_CASE("swap equals the three-CX composition") {
  const auto CX = gate_unitary(GateKind::kCx);
  // The reversed CX permutes the middle basis states.
  Eigen::MatrixXcd RCX = Eigen::MatrixXcd::Identity(4, 4);
  RCX(1, 1) = RCX(3, 3) = 0;
  RCX(1, 3) = RCX(3, 1) = 1;
  CHECK(max_abs(CX * RCX * CX - gate_unitary(GateKind::kSwap)) < kTight);

  // And on the four basis states through the simulator, with CX(b, a)
  // playing the reversed role.
  for (std::uint64_t basis = 0; basis < 4; ++basis) {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
    amps[static_cast<Eigen::Index>(basis)] = 1.0;
    StateVector state(2, amps);
    StateVector via_swap = apply_gate(state, Gate::swap(0, 1));
    StateVector via_cx = apply_gate(
        apply_gate(apply_gate(state, Gate::cx(0, 1)), Gate::cx(1, 0)),
        Gate::cx(0, 1));
    CHECK(max_abs(via_swap.amplitudes() - via_cx.amplitudes()) < kTight);
  }
}

TEST_CASE("strided application agrees with the dense unitaries") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto random_state = [&](int n) {
    Eigen::VectorXcd amps(1 << n);
    for (auto& a : amps.reshaped()) a = {gauss(rng), gauss(rng)};
    return StateVector(n, amps / amps.norm());
  };

  for (GateKind kind : all_kinds()) {
    const int arity = gate_arity(kind);
    const int n = arity;  // act on a register exactly as wide as the gate
    const StateVector state = random_state(n);
    Gate gate{kind, {}, 0.7};
    for (int q = 0; q < arity; ++q) gate.targets.push_back(q);

    const Eigen::VectorXcd expected_dense =
        gate_unitary(kind, gate.theta) *
        bit_reversed(state.amplitudes(), n);
    const Eigen::VectorXcd actual =
        bit_reversed(apply_gate(state, gate).amplitudes(), n);
    CHECK(max_abs(actual - expected_dense) < kTight);
  }
}

TEST_CASE("named single-qubit actions") {
  StateVector zero(1);
  const auto plus = apply_gate(zero, Gate::single(GateKind::kH, 0));
  CHECK(std::abs(plus.amplitudes()[0] - kInvSqrt2) < kTight);
  CHECK(std::abs(plus.amplitudes()[1] - kInvSqrt2) < kTight);

  // Z turns |+> into |->.
  const auto minus = apply_gate(plus, Gate::single(GateKind::kZ, 0));
  CHECK(std::abs(minus.amplitudes()[0] - kInvSqrt2) < kTight);
  CHECK(std::abs(minus.amplitudes()[1] + kInvSqrt2) < kTight);
}

TEST_CASE("X twice restores a random state") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::VectorXcd amps(8);
    for (auto& a : amps.reshaped()) a = {gauss(rng), gauss(rng)};
    const StateVector state(3, amps / amps.norm());
    const int target = static_cast<int>(rng() % 3);
    const auto back = apply_gate(apply_gate(state, Gate::single(GateKind::kX, target)),
                                 Gate::single(GateKind::kX, target));
    CHECK(max_abs(back.amplitudes() - state.amplitudes()) < kTight);
  }
}

TEST_CASE("norm is preserved by random circuits") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto kinds = all_kinds();
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 3);
    Circuit circuit;
    circuit.n_qubits = n;
    for (int g = 0; g < 12; ++g) {
      const GateKind kind = kinds[rng() % kinds.size()];
      Gate gate{kind, {}, gauss(rng)};
      std::vector<int> pool(static_cast<std::size_t>(n));
      for (int q = 0; q < n; ++q) pool[static_cast<std::size_t>(q)] = q;
      std::shuffle(pool.begin(), pool.end(), rng);
      gate.targets.assign(pool.begin(), pool.begin() + gate_arity(kind));
      circuit.ops.push_back(std::move(gate));
    }
    const auto state = run_circuit(circuit);
    CHECK(std::abs(state.amplitudes().squaredNorm() - 1.0) < 1e-9);
  }
}

TEST_CASE("the four Bell circuits produce the four Bell states") {
  struct BellCase {
    Circuit circuit;
    Eigen::Index a, b;
    double sign;
  };
  // Index 1 is |q0=1, q1=0>, the state usually written |10>; 2 is |01>.
  std::vector<BellCase> cases;
  cases.push_back({{2, {Gate::single(GateKind::kH, 0), Gate::cx(0, 1)}},
                   0, 3, +1.0});  // Phi+
  cases.push_back({{2,
                    {Gate::single(GateKind::kX, 0),
                     Gate::single(GateKind::kH, 0), Gate::cx(0, 1)}},
                   0, 3, -1.0});  // Phi-
  cases.push_back({{2,
                    {Gate::single(GateKind::kH, 0),
                     Gate::single(GateKind::kX, 1), Gate::cx(0, 1)}},
                   2, 1, +1.0});  // Psi+
  cases.push_back({{2,
                    {Gate::single(GateKind::kX, 0),
                     Gate::single(GateKind::kH, 0),
                     Gate::single(GateKind::kX, 1), Gate::cx(0, 1)}},
                   2, 1, -1.0});  // Psi-
  for (const auto& bell : cases) {
    const auto amps = run_circuit(bell.circuit).amplitudes();
    Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(4);
    expected[bell.a] = kInvSqrt2;
    expected[bell.b] = bell.sign * kInvSqrt2;
    CHECK(max_abs(amps - expected) < kTight);
  }

  // Phi- via the Z-after-H equivalent circuit.
  Circuit zh{2,
             {Gate::single(GateKind::kH, 0), Gate::single(GateKind::kZ, 0),
              Gate::cx(0, 1)}};
  const auto amps = run_circuit(zh).amplitudes();
  CHECK(std::abs(amps[0] - kInvSqrt2) < kTight);
  CHECK(std::abs(amps[3] + kInvSqrt2) < kTight);
}

TEST_CASE("apply_gate rejects bad targets") {
  StateVector state(2);
  CHECK_THROWS_AS(apply_gate(state, Gate::single(GateKind::kX, 2)),
                  BadTargetError);
  CHECK_THROWS_AS(apply_gate(state, Gate::cx(1, 1)), BadTargetError);
  CHECK_THROWS_AS(apply_gate(state, Gate::single(GateKind::kX, -1)),
                  BadTargetError);
}

TEST_CASE("initialize_amplitudes normalizes the Gaussian profile") {
  const auto state = initialize_amplitudes(gaussian_amplitudes(5));
  const auto& amps = state.amplitudes();
  CHECK(std::abs(amps[0]) ==
        doctest::Approx(testdata::kGauss5qFirstAmplitude).epsilon(1e-6));
  CHECK(std::abs(amps[15]) ==
        doctest::Approx(testdata::kGauss5qPeakAmplitude).epsilon(1e-6));
  CHECK(std::abs(amps[16]) ==
        doctest::Approx(testdata::kGauss5qPeakAmplitude).epsilon(1e-6));
  CHECK(std::abs(amps[31]) ==
        doctest::Approx(testdata::kGauss5qFirstAmplitude).epsilon(1e-6));
}

TEST_CASE("initialize_amplitudes trivial cases") {
  Eigen::VectorXd basis = Eigen::VectorXd::Zero(8);
  basis[0] = 1.0;
  CHECK(max_abs(initialize_amplitudes(basis).amplitudes() -
                StateVector(3).amplitudes()) < kTight);

  const auto balanced = initialize_amplitudes(testdata::vec({1, 1, 1, 1}));
  for (Eigen::Index i = 0; i < 4; ++i) {
    CHECK(std::abs(balanced.amplitudes()[i] - 0.5) < kTight);
  }

  CHECK_THROWS_AS(initialize_amplitudes(Eigen::VectorXd(Eigen::VectorXd::Zero(4))),
                  ZeroVectorError);
  CHECK_THROWS_AS(initialize_amplitudes(testdata::vec({1, 1, 1})),
                  DimensionMismatchError);
}

TEST_CASE("exact probabilities") {
  // |Psi+>
  Circuit psi_plus{2,
                   {Gate::single(GateKind::kH, 0),
                    Gate::single(GateKind::kX, 1), Gate::cx(0, 1)}};
  const auto probs = exact_probabilities(run_circuit(psi_plus));
  CHECK((probs.counts() - testdata::vec({0, 0.5, 0.5, 0})).cwiseAbs()
            .maxCoeff() < kTight);

  // Five parallel Hadamards give 32 equal probabilities of 1/32.
  Circuit hadamards{5, {}};
  for (int q = 0; q < 5; ++q) {
    hadamards.ops.push_back(Gate::single(GateKind::kH, q));
  }
  const auto uniform = exact_probabilities(run_circuit(hadamards));
  CHECK(uniform.counts().minCoeff() == doctest::Approx(1.0 / 32).epsilon(1e-12));
  CHECK(uniform.counts().maxCoeff() == doctest::Approx(1.0 / 32).epsilon(1e-12));
  CHECK(uniform.total() == doctest::Approx(1.0).epsilon(1e-9));

  const auto ground = exact_probabilities(StateVector(1));
  CHECK(exact_eq(ground.counts(), testdata::vec({1, 0})));
}

TEST_CASE("circuit text parsing") {
  std::istringstream text(
      "# a Bell pair with spectator ops\n"
      "H 0\n"
      "x 1  # lowercase works\n"
      "P 1.5707963267948966 1\n"
      "CX 0 1\n");
  const Circuit circuit = parse_circuit(text);
  CHECK(circuit.n_qubits == 2);
  REQUIRE(circuit.ops.size() == 4);
  CHECK(circuit.ops[0].kind == GateKind::kH);
  CHECK(circuit.ops[2].kind == GateKind::kP);
  CHECK(circuit.ops[2].theta == doctest::Approx(std::numbers::pi / 2));
  CHECK(circuit.ops[3].targets == std::vector<int>{0, 1});

  std::istringstream with_width("qubits 4\nH 0\n");
  CHECK(parse_circuit(with_width).n_qubits == 4);

  std::istringstream bad("FOO 0\n");
  CHECK_THROWS_AS(parse_circuit(bad), Error);
  std::istringstream missing("CX 0\n");
  CHECK_THROWS_AS(parse_circuit(missing), Error);
}

TEST_CASE("sample_counts is a real multinomial") {
  SUBCASE("degenerate distribution puts every shot in one bin") {
    const CountVector probs(1, testdata::vec({1, 0}));
    const auto counts = sample_counts(probs, 8000, 99);
    CHECK(exact_eq(counts.counts(), testdata::vec({8000, 0})));
  }

  SUBCASE("fixed seed reproduces bitwise") {
    Eigen::VectorXd p = Eigen::VectorXd::Constant(32, 1.0 / 32);
    const auto a = sample_multinomial(p, 8192, 1234);
    const auto b = sample_multinomial(p, 8192, 1234);
    CHECK(exact_eq(a, b));
    const auto c = sample_multinomial(p, 8192, 1235);
    CHECK_FALSE(exact_eq(a, c));
  }

  SUBCASE("totals are exact and bins stay within six sigma") {
    // Oracle for the bound: the exact binomial tail. For one bin,
    // X ~ Bin(8192, 1/32); summing the pmf outside [156, 356] in log space
    // gives P(out) ~ 2e-9, so even 32 bins and 20 seeds stay below 1e-4
    // overall by the union bound.
    const int shots = 8192;
    const double p = 1.0 / 32;
    double outside = 0.0;
    double log_pmf = shots * std::log1p(-p);  // pmf(0)
    for (int k = 0; k <= shots; ++k) {
      if (k < 156 || k > 356) outside += std::exp(log_pmf);
      log_pmf += std::log((shots - k) * p) - std::log((k + 1) * (1.0 - p));
    }
    REQUIRE(outside * 32 * 20 < 1e-4);

    Eigen::VectorXd probs = Eigen::VectorXd::Constant(32, p);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto counts = sample_multinomial(probs, shots, seed);
      CHECK(counts.sum() == shots);
      CHECK(counts.minCoeff() >= 156);
      CHECK(counts.maxCoeff() <= 356);
    }
  }

  SUBCASE("rejects non-distributions") {
    CHECK_THROWS_AS(sample_multinomial(testdata::vec({0.5, 0.4}), 10, 0),
                    BadDistributionError);
    CHECK_THROWS_AS(sample_multinomial(testdata::vec({1.2, -0.2}), 10, 0),
                    BadDistributionError);
  }
}

TEST_CASE("apply_channel_and_sample") {
  SUBCASE("identity channel reduces to plain sampling") {
    Eigen::VectorXd truth = testdata::vec({0, 4000, 4000, 0});
    const Eigen::VectorXd direct =
        sample_multinomial(truth / truth.sum(), 8000, 7);
    const Eigen::VectorXd channel = apply_channel_and_sample(
        truth, Eigen::MatrixXd::Identity(4, 4), 8000, 7);
    CHECK(exact_eq(direct, channel));
  }

  SUBCASE("long-run fraction approaches the response column") {
    Eigen::VectorXd truth = testdata::vec({1, 0});
    const auto counts = apply_channel_and_sample(
        truth, sample_response_1q().entries(), 2000000, 3);
    // Binomial sigma at p = 0.8615 over 2e6 shots is 2.4e-4.
    CHECK(counts[0] / 2000000.0 ==
          doctest::Approx(0.8615).epsilon(3e-3));
  }

  SUBCASE("expected folded counts match the direct product") {
    // Oracle: R * t computed as 4000 * (column 1 + column 2).
    const auto response = sample_response_2q();
    const Eigen::VectorXd expected = testdata::bell_expected_folding();
    const Eigen::VectorXd check =
        4000.0 * (response.entries().col(1) + response.entries().col(2));
    REQUIRE((check - expected).cwiseAbs().maxCoeff() < 1e-9);

    // The sampled counts concentrate around it: sigma per bin < 45.
    Eigen::VectorXd truth = testdata::vec({0, 4000, 4000, 0});
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(4);
    for (std::uint64_t seed = 0; seed < 32; ++seed) {
      mean += apply_channel_and_sample(truth, response.entries(), 8000, seed);
    }
    mean /= 32.0;
    CHECK((mean - expected).cwiseAbs().maxCoeff() < 50.0);
  }

  SUBCASE("dimension mismatch") {
    Eigen::VectorXd truth = testdata::vec({1, 0, 0});
    CHECK_THROWS_AS(apply_channel_and_sample(
                        truth, Eigen::MatrixXd::Identity(4, 4), 100, 0),
                    DimensionMismatchError);
  }
}

TEST_CASE("derived seeds separate work items") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(5, 3) == derive_seed(5, 3));
}
