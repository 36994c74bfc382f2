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
#include <span>
#include <vector>

#include "qunfold/errors.hpp"

namespace qunfold {

// Non-quantum synthetic world: integer-valued truth data, a hand-specified
// smearing procedure, and a tridiagonal response over arbitrary bin counts.
// Histogram lengths here are not restricted to powers of two; the
// unfolding routines work on plain vectors either way.

/// Integer data points confined to an inclusive bin range.
struct IntegerSample {
  std::vector<int> values;
  int lo = 0;
  int hi = 0;
};

/// N draws from Normal(0, sigma), clipped to [lo, hi], then rounded to the
/// nearest integer (halves away from zero).
IntegerSample clipped_normal_integers(std::size_t n, double sigma, int lo,
                                      int hi, std::uint64_t seed);

/// Smears each value by at most one bin, driven by one uniform draw
/// u in [0, 1) per value:
///   v == -10, u < 0.2        -> v + 1
///   v == +10, u < 0.3        -> v - 1
///   |v| < 10, u < 0.2        -> v - 1
///   |v| < 10, u < 0.8        -> v + 1
///   otherwise                -> v
/// The thresholds are specific to the [-10, 10] range; any other bin_range
/// throws BadRangeError.
IntegerSample threshold_noise(const IntegerSample& truth, std::uint64_t seed);

/// Same procedure with the caller supplying the draws (one per value);
/// used to replay recorded noise streams.
IntegerSample threshold_noise_with_draws(const IntegerSample& truth,
                                         std::span<const double> draws);

/// B x B column-stochastic smearing matrix: 0.75 in the (0,0) and
/// (B-1,B-1) corners with 0.25 adjacent, 0.5 on the interior diagonal with
/// 0.25 on the sub/super-diagonals. Exactly stochastic by construction.
Eigen::MatrixXd tridiagonal_response(int bins);

struct Histogram {
  std::vector<double> edges;  // length B + 1, strictly increasing
  Eigen::VectorXd counts;     // length B
};

/// B + 1 equally spaced edges spanning [lo, hi].
std::vector<double> uniform_edges(double lo, double hi, int bins);

/// Left-closed right-open binning; the last bin is right-closed.
Histogram histogram(const IntegerSample& sample,
                    const std::vector<double>& edges);

/// One integer per line.
void save_sample(const IntegerSample& sample,
                 const std::filesystem::path& path);
IntegerSample load_sample(const std::filesystem::path& path, int lo, int hi);

/// CSV `lo,hi,count`, one row per bin.
void save_histogram_csv(const Histogram& histogram,
                        const std::filesystem::path& path);
Histogram load_histogram_csv(const std::filesystem::path& path);

}  // namespace qunfold
