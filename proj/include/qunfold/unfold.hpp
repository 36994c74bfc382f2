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
#include <limits>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "qunfold/errors.hpp"

namespace qunfold {

// The three unfolding routines. All of them estimate the truth histogram t
// from measured counts m related by m = R t + beta, where R is the
// column-stochastic response. They operate on plain vectors/matrices so the
// quantum (2^n) and synthetic (any B) worlds share one solver path. An
// optional background beta is subtracted from m before any method runs;
// the resulting vector is passed through as-is (iterative Bayes tolerates
// negatives, constrained least squares does not).

struct UnfoldResult {
  std::string method;  // "mi" | "ibu" | "cls"
  Eigen::VectorXd t_hat;

  // Method metadata.
  int iterations = 0;  // IBU iterations applied / CLS steps taken
  double objective = std::numeric_limits<double>::quiet_NaN();  // CLS
  double condition_estimate =
      std::numeric_limits<double>::quiet_NaN();  // MI, from LU rcond
  double determinant = std::numeric_limits<double>::quiet_NaN();  // MI
  bool ill_conditioned = false;  // MI, condition estimate > 1e12

  // Diagnostics.
  int negative_bins = 0;
  double total_delta = 0.0;  // sum(t_hat) - sum(m - beta)
};

/// t_hat = R^{-1} (m - beta) by a pivoted LU solve (no explicit inverse on
/// the solution path). Unbiased, but the result can carry negative bins.
/// Throws SingularMatrixError when the factorization finds the matrix
/// numerically singular (zero pivot or rcond below 1e-15); flags
/// ill_conditioned when the condition estimate exceeds 1e12.
UnfoldResult matrix_inversion(
    const Eigen::VectorXd& measured, const Eigen::MatrixXd& response,
    const std::optional<Eigen::VectorXd>& background = std::nullopt);

/// Explicit inverse accessor, for inspection and tests; the solver above
/// never forms it.
Eigen::MatrixXd response_inverse(const Eigen::MatrixXd& response);

/// Iterative Bayes update, `iterations` times from the given prior:
///
///   t_i^{n+1} = sum_j ( R_ji t_i^n / sum_k R_jk t_k^n ) m_j
///
/// With iterations = 0 the prior is returned unchanged. A denominator
/// below 1e-30 makes that j's term contribute 0, which preserves the
/// zero-prior semantics instead of producing NaNs. The prior must be
/// non-negative with at least one positive entry (BadPriorError). The
/// result scale is invariant under scaling of the prior; bins where the
/// prior is zero stay zero; when m >= 0 the output is non-negative and its
/// total equals the total of m exactly (column-stochastic R).
UnfoldResult ibu(const Eigen::VectorXd& measured, const Eigen::VectorXd& prior,
                 const Eigen::MatrixXd& response, int iterations,
                 const std::optional<Eigen::VectorXd>& background =
                     std::nullopt);

struct ConstrainedLsOptions {
  double tolerance = 1e-6;  // objective gap guarantee at termination
  int max_steps = 200000;
  std::uint64_t seed = 0;  // randomized start, recorded with the result
};

/// Minimizes ||m - R x||^2 subject to sum(x) = sum(m) and 0 <= x_i <=
/// sum(m), by accelerated projected gradient descent with exact Euclidean
/// projection onto the scaled simplex (which already implies the upper
/// box bound). The start is a seeded random direction normalized onto the
/// simplex. Termination is certified through the linear-minimization gap
/// <grad f(x), x - z> maximized over the feasible set, an upper bound on
/// f(x) - f*; the returned objective is therefore within `tolerance` of
/// the constrained optimum. NoConvergenceError if max_steps runs out
/// first. Measured counts must be non-negative (InfeasibleError
/// otherwise).
UnfoldResult constrained_ls(
    const Eigen::VectorXd& measured, const Eigen::MatrixXd& response,
    const ConstrainedLsOptions& options = {},
    const std::optional<Eigen::VectorXd>& background = std::nullopt);

/// Exact Euclidean projection onto {x >= 0, sum(x) = total}. Exposed for
/// tests; total must be non-negative.
Eigen::VectorXd project_onto_simplex(const Eigen::VectorXd& point,
                                     double total);

/// How an unfolded estimate compares against a known truth.
struct ComparisonMetrics {
  Eigen::VectorXd ratio;  // t_hat_i / t_i, fixed to 1 where t_i <= 0
  double l2_distance = 0.0;
  int negative_bins = 0;
  double total_delta = 0.0;  // sum(t_hat) - sum(t)
};

ComparisonMetrics compare_to_truth(const Eigen::VectorXd& t_hat,
                                   const Eigen::VectorXd& truth);

nlohmann::json unfold_result_to_json(const UnfoldResult& result);
UnfoldResult unfold_result_from_json(const nlohmann::json& doc);

}  // namespace qunfold
