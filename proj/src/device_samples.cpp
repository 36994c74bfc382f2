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

#include "qunfold/device_samples.hpp"

namespace qunfold {

ResponseMatrix sample_response_1q() {
  Eigen::MatrixXd entries(2, 2);
  entries << 0.861500, 0.111875,  //
      0.138500, 0.888125;
  return ResponseMatrix(1, std::move(entries));
}

ResponseMatrix sample_response_2q() {
  Eigen::MatrixXd entries(4, 4);
  entries << 0.851000, 0.118500, 0.064250, 0.013500,  //
      0.127625, 0.855375, 0.008875, 0.053250,         //
      0.019000, 0.005250, 0.816000, 0.116250,         //
      0.002375, 0.020875, 0.110875, 0.817000;
  return ResponseMatrix(2, std::move(entries));
}

Eigen::VectorXd sample_plus_measurement() {
  Eigen::VectorXd m(2);
  m << 4151, 3849;
  return m;
}

Eigen::VectorXd sample_bell_measurement() {
  Eigen::VectorXd m(4);
  m << 606, 3115, 3656, 623;
  return m;
}

Eigen::VectorXd sample_bell_measurement_feasible() {
  Eigen::VectorXd m(4);
  m << 750, 3100, 3550, 600;
  return m;
}

}  // namespace qunfold
