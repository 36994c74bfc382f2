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

#include "qunfold/core.hpp"

namespace qunfold {

// Seeded draws are deterministic within one build (std::mt19937_64 plus
// the standard distributions); bit-compatibility across standard-library
// implementations is not promised. Every experiment records its seed.

/// Deterministic per-work-item sub-seed, so batched/parallel runs agree
/// with serial ones bitwise.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// Multinomial draw over arbitrary-length probability vectors via
/// sequential conditional binomials. The result is integer-valued and
/// totals `shots` exactly. Throws BadDistributionError unless probs >= 0
/// and sum to 1 within 1e-6.
Eigen::VectorXd sample_multinomial(const Eigen::VectorXd& probs,
                                   std::int64_t shots, std::uint64_t seed);

/// CountVector wrapper around sample_multinomial.
CountVector sample_counts(const CountVector& probs, std::int64_t shots,
                          std::uint64_t seed);

/// Folds a truth histogram through a readout channel and samples measured
/// counts: one multinomial draw from R * p rather than per-shot two-stage
/// sampling (distributionally identical, O(2^n) instead of O(shots)).
/// `truth` may be counts or probability mass; it is normalized by its
/// total. Throws DimensionMismatchError when sizes disagree.
Eigen::VectorXd apply_channel_and_sample(const Eigen::VectorXd& truth,
                                         const Eigen::MatrixXd& channel,
                                         std::int64_t shots,
                                         std::uint64_t seed);
CountVector apply_channel_and_sample(const CountVector& truth,
                                     const ResponseMatrix& channel,
                                     std::int64_t shots, std::uint64_t seed);

}  // namespace qunfold
