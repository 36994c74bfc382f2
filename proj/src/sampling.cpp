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

#include "qunfold/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qunfold {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(master_seed ^ splitmix64(index + 1));
}

Eigen::VectorXd sample_multinomial(const Eigen::VectorXd& probs,
                                   std::int64_t shots, std::uint64_t seed) {
  if (shots < 0) throw BadDistributionError("shots must be non-negative");
  if ((probs.array() < 0.0).any()) {
    throw BadDistributionError("probabilities must be non-negative");
  }
  if (std::abs(probs.sum() - 1.0) > 1e-6) {
    throw BadDistributionError("probabilities sum to " +
                               std::to_string(probs.sum()) + ", not 1");
  }

  std::mt19937_64 rng(seed);
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(probs.size());
  std::int64_t remaining = shots;
  double mass_left = probs.sum();
  for (Eigen::Index i = 0; i + 1 < probs.size(); ++i) {
    if (remaining == 0) break;
    if (mass_left <= 0.0) break;
    const double conditional =
        std::clamp(probs[i] / mass_left, 0.0, 1.0);
    std::binomial_distribution<std::int64_t> binom(remaining, conditional);
    const std::int64_t draw = binom(rng);
    counts[i] = static_cast<double>(draw);
    remaining -= draw;
    mass_left -= probs[i];
  }
  counts[probs.size() - 1] = static_cast<double>(remaining);
  return counts;
}

CountVector sample_counts(const CountVector& probs, std::int64_t shots,
                          std::uint64_t seed) {
  return CountVector(probs.n_qubits(),
                     sample_multinomial(probs.counts(), shots, seed));
}

Eigen::VectorXd apply_channel_and_sample(const Eigen::VectorXd& truth,
                                         const Eigen::MatrixXd& channel,
                                         std::int64_t shots,
                                         std::uint64_t seed) {
  if (channel.rows() != channel.cols() || channel.cols() != truth.size()) {
    throw DimensionMismatchError(
        "channel is " + std::to_string(channel.rows()) + "x" +
        std::to_string(channel.cols()) + " but truth has " +
        std::to_string(truth.size()) + " bins");
  }
  const double total = truth.sum();
  if (total <= 0.0 || (truth.array() < 0.0).any()) {
    throw BadDistributionError("truth histogram must be non-negative with a "
                               "positive total");
  }
  Eigen::VectorXd folded = channel * (truth / total);
  // Guard against -1e-18 style round-off before the distribution check.
  folded = folded.cwiseMax(0.0);
  folded /= folded.sum();
  return sample_multinomial(folded, shots, seed);
}

CountVector apply_channel_and_sample(const CountVector& truth,
                                     const ResponseMatrix& channel,
                                     std::int64_t shots, std::uint64_t seed) {
  return CountVector(truth.n_qubits(),
                     apply_channel_and_sample(truth.counts(),
                                              channel.entries(), shots, seed));
}

}  // namespace qunfold
