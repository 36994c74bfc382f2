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
//
// Frozen reference data for the golden tests. Everything here is either
// recorded device output, a published worked example, or a value computed
// by an independent oracle before being frozen (the oracle is named next
// to each value).

#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace qunfold::testdata {

inline Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

// ---- Two-qubit worked example ----------------------------------------

// Printed inverse of the sampled 2-qubit response (16 entries).
inline Eigen::MatrixXd response_2q_inverse() {
  Eigen::MatrixXd inv(4, 4);
  inv << +1.20206606, -0.16605952, -0.09341977, +0.00425315,  //
      -0.17936727, +1.19572556, +0.01152758, -0.07661078,     //
      -0.02752246, +0.00046624, +1.25179634, -0.17769229,     //
      +0.00482367, -0.03013228, -0.16990414, +1.25004992;
  return inv;
}

inline constexpr double kResponse2qDeterminant = 0.46448;

// Matrix inversion of the Bell-pair measurements.
inline Eigen::VectorXd mi_bell() {
  return vec({-127.716, 3610.404, 4450.638, 66.672});
}
inline Eigen::VectorXd mi_bell_feasible() {
  return vec({57.676, 3567.180, 4318.065, 57.077});
}

// Iterative-Bayes walkthroughs. One qubit, m = [4151, 3849], prior [1, 1]:
struct IbuSnapshot {
  int iterations;
  Eigen::VectorXd expected;
};

inline std::vector<IbuSnapshot> ibu_1q_snapshots() {
  return {
      {1, vec({4193.165, 3806.834})},
      {2, vec({4277.457, 3722.542})},
      {3, vec({4314.417, 3685.582})},
      {10, vec({4343.410, 3656.589})},
  };
}

// Two qubits, m = [606, 3115, 3656, 623], uniform prior:
inline std::vector<IbuSnapshot> ibu_2q_uniform_snapshots() {
  return {
      {1, vec({947.003, 2651.760, 3255.226, 1146.008})},
      {5, vec({187.168, 3366.011, 4151.338, 295.481})},
      {10, vec({65.849, 3468.337, 4302.088, 163.724})},
      {100, vec({0.001, 3524.170, 4400.027, 75.801})},
      {1000, vec({0.0, 3524.179, 4400.088, 75.731})},
  };
}

// Same m with the truth-shaped prior [0, 1, 1, 0]:
inline std::vector<IbuSnapshot> ibu_2q_shaped_snapshots() {
  return {
      {1, vec({0.0, 3598.040, 4401.959, 0.0})},
      {10, vec({0.0, 3533.524, 4466.475, 0.0})},
  };
}

// Expected channel output R_2q * [0, 4000, 4000, 0]. Oracle: the direct
// matrix-vector product, evaluated independently (column 1 + column 2 of
// the response, times 4000).
inline Eigen::VectorXd bell_expected_folding() {
  return vec({731.0, 3457.0, 3285.0, 527.0});
}

// ---- Five-qubit device data ------------------------------------------

// Counts measured behind five parallel H gates, 8192 shots, keyed by
// basis label in ascending order.
inline Eigen::VectorXd uniform_5q_measured() {
  return vec({324, 220, 306, 262, 309, 294, 342, 311, 243, 188, 236,
              215, 283, 218, 267, 242, 264, 240, 265, 274, 281, 268,
              299, 289, 220, 211, 224, 216, 242, 196, 222, 221});
}

// Normalized Gaussian (harmonic-oscillator ground state) amplitudes for
// n = 5: first entry and the two peak entries.
inline constexpr double kGauss5qFirstAmplitude = 0.04074024;
inline constexpr double kGauss5qPeakAmplitude = 0.26565975;

// ---- Synthetic world: threshold-noise procedure ----------------------

// The five-value hand trace.
inline std::vector<int> hand_trace_truth() { return {5, 1, 0, -6, -1}; }
inline std::vector<double> hand_trace_draws() {
  return {0.2748, 0.6522, 0.9564, 0.4356, 0.0701};
}
inline std::vector<int> hand_trace_expected() { return {6, 2, 0, -5, -2}; }

// A recorded run of the same procedure: 100 integer truth values, the 100
// uniform draws that were applied to them, and the smeared output.
inline std::vector<int> recorded_truth_100() {
  return {5,  1,  0,  -6, -1, -1, 0,  -2, 0,  -1, -4, 3,  3,  5,  0,  -1, -2,
          -5, 3,  -3, -4, -1, 4,  1,  -3, -2, 2,  0,  -2, -1, 2,  6,  -4, -2,
          -2, -7, -3, -3, 3,  0,  -5, 2,  -1, -5, -2, -2, -3, 0,  -7, -1, 3,
          3,  3,  3,  4,  -3, 3,  -6, -2, -6, 3,  4,  -1, 5,  -2, 0,  0,  -3,
          1,  6,  -3, 3,  0,  5,  1,  2,  2,  1,  -4, 4,  -4, 1,  2,  -3, 0,
          4,  0,  -3, -9, -3, -2, -2, -3, 1,  -2, 0,  2,  -3, -1, 6};
}

inline std::vector<double> recorded_draws_100() {
  return {
    2.74780505e-01, 6.52223125e-01, 9.56449511e-01, 4.35520556e-01, 7.01325051e-02,
    5.77314878e-02, 8.28710188e-02, 9.59707187e-01, 5.40760836e-01, 8.37462433e-01,
    1.70033544e-01, 2.60345073e-01, 6.91977512e-01, 8.95570328e-01, 3.40688484e-01,
    6.46731980e-02, 8.64119669e-01, 2.90872446e-01, 7.41082406e-01, 1.58033655e-01,
    6.94963435e-01, 8.41419619e-01, 7.27152079e-01, 3.59107525e-01, 7.26689751e-01,
    1.39467124e-01, 3.13819115e-01, 4.19582757e-01, 8.77212039e-01, 1.53740209e-01,
    8.80124790e-01, 7.98964319e-01, 9.71624297e-01, 3.67702983e-01, 2.04939769e-01,
    2.40570320e-01, 8.27862801e-01, 9.65228149e-01, 6.98809998e-01, 4.82497042e-01,
    2.87049765e-01, 8.33687884e-01, 8.72179508e-01, 9.21315918e-02, 2.15949471e-01,
    8.31761090e-01, 8.48303897e-01, 3.14652999e-01, 2.79294597e-01, 4.30815022e-01,
    5.39446500e-01, 9.55668150e-02, 8.36912139e-01, 5.34734870e-01, 7.74967815e-01,
    2.30836266e-01, 9.65293351e-01, 7.51027307e-01, 3.43093864e-01, 9.48527647e-01,
    7.00511779e-01, 8.40561085e-01, 4.54973059e-02, 5.56415411e-02, 7.42737274e-01,
    3.04686433e-01, 5.16784366e-01, 1.56262424e-01, 9.77952410e-01, 5.02751048e-01,
    8.29001078e-01, 7.40377963e-02, 4.78915452e-01, 6.22794804e-02, 8.84241431e-01,
    4.45810179e-01, 6.85499183e-02, 7.64962823e-02, 5.38792658e-01, 7.55664045e-02,
    1.83772318e-01, 4.36357084e-01, 4.97782831e-01, 5.83311915e-01, 6.20512681e-01,
    3.72811500e-01, 6.18736583e-01, 1.57244658e-01, 2.75508475e-01, 7.98718271e-01,
    1.53089301e-01, 2.23322973e-01, 2.42978180e-01, 4.79507305e-01, 7.45522042e-04,
    3.03113605e-02, 4.61548152e-01, 1.62520685e-01, 6.79501804e-01, 7.95204587e-01,
  };
}

inline std::vector<int> recorded_smeared_100() {
  return {6,  2,  0,  -5, -2, -2, -1, -2, 1,  -1, -5, 4,  4,  5,  1,  -2, -2,
          -4, 4,  -4, -3, -1, 5,  2,  -2, -3, 3,  1,  -2, -2, 2,  7,  -4, -1,
          -1, -6, -3, -3, 4,  1,  -4, 2,  -1, -6, -1, -2, -3, 1,  -6, 0,  4,
          2,  3,  4,  5,  -2, 3,  -5, -1, -6, 4,  4,  -2, 4,  -1, 1,  1,  -4,
          1,  7,  -3, 2,  1,  4,  1,  3,  1,  0,  -3, 3,  -5, 2,  3,  -2, 1,
          5,  1,  -4, -8, -2, -3, -1, -2, 2,  -3, -1, 3,  -4, 0,  7};
}

// ---- Synthetic world: the 21-bin worked pipeline ----------------------

// Truth histogram of 10^4 clipped-normal integers over 21 unit bins.
inline Eigen::VectorXd synthetic_truth_21() {
  return vec({5, 23, 32, 78, 219, 329, 571, 837, 1089, 1287, 1292,
              1260, 1052, 783, 500, 324, 182, 83, 32, 14, 8});
}

// The matching measured histogram. Recovered as R_21 * t_hat_MI from the
// tabulated inversion output below (the product is integral to 3e-7 and
// totals exactly 10^4, and replaying IBU on it reproduces the tabulated
// IBU output to 5e-13).
inline Eigen::VectorXd synthetic_measured_21() {
  return vec({9, 26, 36, 97, 210, 362, 556, 831, 1129, 1224, 1253,
              1252, 1070, 745, 521, 326, 181, 110, 36, 14, 12});
}

// Tabulated outputs of the three methods on that measured histogram.
inline Eigen::VectorXd synthetic_mi_21() {
  return vec({2.36190476e+01, -3.48571429e+01, 1.50095238e+02,
              -1.21333333e+02, 4.80571429e+02, 1.90476190e-01,
              9.67047619e+02, 2.89714286e+02, 1.77752381e+03,
              6.71238095e+02, 1.77600000e+03, 7.88761905e+02,
              1.65447619e+03, 1.82285714e+02, 9.60952381e+02,
              -2.01904762e+01, 3.83428571e+02, -2.26666667e+01,
              1.01904762e+02, -3.71428571e+01, 2.83809524e+01});
}

inline Eigen::VectorXd synthetic_ibu10_21() {
  return vec({5.259372656831409,  25.388591380196175, 33.557337461054985,
              67.96709437048914,  208.8410238062819,  356.97817161684395,
              521.2370635355416,  822.9011004066444,  1193.1006184446076,
              1246.8670968072922, 1232.6156342943655, 1329.7638967204725,
              1095.5138161773816, 719.1611893853731,  514.3011592136613,
              299.016654127236,   181.16794027605107, 100.54732163607031,
              23.88223196059284,  9.002561105297106,  12.930124617715322});
}

// SLSQP output at tol 1e-6; within ~1.2e-3 per entry of the exact
// constrained optimum.
inline Eigen::VectorXd synthetic_cls_21() {
  return vec({4.6175683800, 21.291404430, 59.2658346200, 0.0,
              334.52132545, 165.440539820, 787.74328185, 478.197504920,
              1584.36645844, 864.83510512, 1585.82646343, 971.91899933,
              1481.55800967, 342.012482900, 816.99820065, 105.680456820,
              277.58084116, 61.4881026600, 40.7416841000, 0.0,
              15.9157361800});
}

// ---- Tridiagonal response --------------------------------------------

inline Eigen::MatrixXd tridiagonal_4() {
  Eigen::MatrixXd r(4, 4);
  r << 0.75, 0.25, 0.00, 0.00,  //
      0.25, 0.50, 0.25, 0.00,   //
      0.00, 0.25, 0.50, 0.25,   //
      0.00, 0.00, 0.25, 0.75;
  return r;
}

}  // namespace qunfold::testdata
