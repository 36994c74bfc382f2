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

#include "qunfold/unfold.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <nlohmann/json.hpp>

namespace qunfold {

namespace {

constexpr double kRcondSingular = 1e-15;
constexpr double kConditionWarn = 1e12;
constexpr double kDenominatorFloor = 1e-30;

Eigen::VectorXd subtract_background(
    const Eigen::VectorXd& measured,
    const std::optional<Eigen::VectorXd>& background,
    Eigen::Index expected_dim) {
  if (measured.size() != expected_dim) {
    throw DimensionMismatchError("measured vector has " +
                                 std::to_string(measured.size()) +
                                 " bins, response expects " +
                                 std::to_string(expected_dim));
  }
  if (!background) return measured;
  if (background->size() != measured.size()) {
    throw DimensionMismatchError("background has " +
                                 std::to_string(background->size()) +
                                 " bins, measured has " +
                                 std::to_string(measured.size()));
  }
  return measured - *background;
}

void check_square(const Eigen::MatrixXd& response) {
  if (response.rows() != response.cols()) {
    throw DimensionMismatchError("response matrix must be square");
  }
}

void fill_diagnostics(UnfoldResult& result, const Eigen::VectorXd& m_eff) {
  result.negative_bins =
      static_cast<int>((result.t_hat.array() < 0.0).count());
  result.total_delta = result.t_hat.sum() - m_eff.sum();
}

}  // namespace

UnfoldResult matrix_inversion(
    const Eigen::VectorXd& measured, const Eigen::MatrixXd& response,
    const std::optional<Eigen::VectorXd>& background) {
  check_square(response);
  const Eigen::VectorXd m_eff =
      subtract_background(measured, background, response.rows());

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(response);
  const double rcond = lu.rcond();
  // The determinant of a large well-conditioned stochastic matrix shrinks
  // with dimension (it is a product of sub-unit factors), so smallness of
  // det alone is not the singularity test; rcond is.
  if (!(rcond > kRcondSingular)) {
    throw SingularMatrixError("response matrix is numerically singular "
                              "(rcond = " + std::to_string(rcond) + ")");
  }

  UnfoldResult result;
  result.method = "mi";
  result.t_hat = lu.solve(m_eff);
  result.determinant = lu.determinant();
  result.condition_estimate = 1.0 / rcond;
  result.ill_conditioned = result.condition_estimate > kConditionWarn;
  fill_diagnostics(result, m_eff);
  return result;
}

Eigen::MatrixXd response_inverse(const Eigen::MatrixXd& response) {
  check_square(response);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(response);
  if (!(lu.rcond() > kRcondSingular)) {
    throw SingularMatrixError("response matrix is numerically singular");
  }
  return lu.inverse();
}

UnfoldResult ibu(const Eigen::VectorXd& measured, const Eigen::VectorXd& prior,
                 const Eigen::MatrixXd& response, int iterations,
                 const std::optional<Eigen::VectorXd>& background) {
  check_square(response);
  if (iterations < 0) throw Error("iteration count must be >= 0");
  const Eigen::VectorXd m_eff =
      subtract_background(measured, background, response.rows());
  if (prior.size() != response.cols()) {
    throw BadPriorError("prior has " + std::to_string(prior.size()) +
                        " bins, response expects " +
                        std::to_string(response.cols()));
  }
  if ((prior.array() < 0.0).any() || prior.maxCoeff() <= 0.0) {
    throw BadPriorError(
        "prior must be non-negative with at least one positive entry");
  }

  Eigen::VectorXd estimate = prior;
  Eigen::VectorXd ratio(m_eff.size());
  for (int n = 0; n < iterations; ++n) {
    const Eigen::VectorXd folded = response * estimate;
    for (Eigen::Index j = 0; j < folded.size(); ++j) {
      // Unreachable measured bins (folded prior ~ 0) contribute nothing.
      ratio[j] =
          std::abs(folded[j]) < kDenominatorFloor ? 0.0 : m_eff[j] / folded[j];
    }
    estimate = estimate.cwiseProduct(response.transpose() * ratio);
  }

  UnfoldResult result;
  result.method = "ibu";
  result.t_hat = std::move(estimate);
  result.iterations = iterations;
  fill_diagnostics(result, m_eff);
  return result;
}

Eigen::VectorXd project_onto_simplex(const Eigen::VectorXd& point,
                                     double total) {
  if (total < 0.0) throw Error("simplex total must be non-negative");
  if (total == 0.0) return Eigen::VectorXd::Zero(point.size());
  // Sort-based projection: find the threshold tau such that
  // sum(max(v - tau, 0)) = total.
  std::vector<double> sorted(point.data(), point.data() + point.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double running = 0.0;
  double tau = 0.0;
  for (std::size_t r = 0; r < sorted.size(); ++r) {
    running += sorted[r];
    const double candidate = (running - total) / static_cast<double>(r + 1);
    if (r + 1 == sorted.size() || sorted[r + 1] <= candidate) {
      tau = candidate;
      break;
    }
  }
  return ((point.array() - tau).max(0.0)).matrix();
}

UnfoldResult constrained_ls(
    const Eigen::VectorXd& measured, const Eigen::MatrixXd& response,
    const ConstrainedLsOptions& options,
    const std::optional<Eigen::VectorXd>& background) {
  check_square(response);
  const Eigen::VectorXd m_eff =
      subtract_background(measured, background, response.rows());
  if ((m_eff.array() < 0.0).any()) {
    throw InfeasibleError(
        "constrained least squares needs non-negative measured counts; "
        "clamp or drop the background first");
  }
  const double total = m_eff.sum();

  UnfoldResult result;
  result.method = "cls";

  if (total == 0.0) {
    // The only feasible point.
    result.t_hat = Eigen::VectorXd::Zero(m_eff.size());
    result.objective = 0.0;
    fill_diagnostics(result, m_eff);
    return result;
  }

  const auto objective = [&](const Eigen::VectorXd& x) {
    return (m_eff - response * x).squaredNorm();
  };
  const auto gradient = [&](const Eigen::VectorXd& x) {
    return Eigen::VectorXd(2.0 * response.transpose() * (response * x - m_eff));
  };

  // Lipschitz constant of the gradient: 2 * sigma_max(R)^2.
  const double lipschitz =
      2.0 * Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
                response.transpose() * response)
                .eigenvalues()
                .maxCoeff();
  if (!(lipschitz > 0.0)) throw Error("response matrix is identically zero");

  // Random direction normalized onto the simplex.
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Eigen::VectorXd x(m_eff.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = uniform(rng);
  x *= total / x.sum();
  x = project_onto_simplex(x, total);

  // Certified stop: over the simplex, convexity gives
  //   f(x) - f* <= <g(x), x - x*> <= <g(x), x> - total * min_i g_i(x)
  // (the linear minimizer over the simplex puts all mass on the smallest
  // gradient coordinate), so that gap falling below `tolerance` proves
  // the objective is within tolerance of the constrained optimum.
  const auto optimality_gap = [&](const Eigen::VectorXd& z) {
    const Eigen::VectorXd g = gradient(z);
    return g.dot(z) - total * g.minCoeff();
  };

  // FISTA with a monotone restart.
  Eigen::VectorXd y = x;
  double momentum = 1.0;
  double f_x = objective(x);
  int steps = 0;
  bool converged = false;
  for (; steps < options.max_steps; ++steps) {
    Eigen::VectorXd x_next =
        project_onto_simplex(y - gradient(y) / lipschitz, total);
    double f_next = objective(x_next);
    if (f_next > f_x) {  // momentum overshoot: restart from x
      y = x;
      momentum = 1.0;
      x_next = project_onto_simplex(y - gradient(y) / lipschitz, total);
      f_next = objective(x_next);
    }
    const double next_momentum =
        0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    y = x_next + ((momentum - 1.0) / next_momentum) * (x_next - x);

    x = std::move(x_next);
    f_x = f_next;
    momentum = next_momentum;

    if (optimality_gap(x) <= options.tolerance) {
      converged = true;
      ++steps;
      break;
    }
  }
  if (!converged) {
    throw NoConvergenceError("constrained least squares did not reach the "
                             "requested tolerance within " +
                             std::to_string(options.max_steps) + " steps");
  }

  result.t_hat = std::move(x);
  result.iterations = steps;
  result.objective = f_x;
  fill_diagnostics(result, m_eff);
  return result;
}

ComparisonMetrics compare_to_truth(const Eigen::VectorXd& t_hat,
                                   const Eigen::VectorXd& truth) {
  if (t_hat.size() != truth.size()) {
    throw DimensionMismatchError("estimate and truth differ in length");
  }
  ComparisonMetrics metrics;
  metrics.ratio = Eigen::VectorXd::Ones(truth.size());
  for (Eigen::Index i = 0; i < truth.size(); ++i) {
    if (truth[i] > 0.0) metrics.ratio[i] = t_hat[i] / truth[i];
  }
  metrics.l2_distance = (t_hat - truth).norm();
  metrics.negative_bins = static_cast<int>((t_hat.array() < 0.0).count());
  metrics.total_delta = t_hat.sum() - truth.sum();
  return metrics;
}

nlohmann::json unfold_result_to_json(const UnfoldResult& result) {
  nlohmann::json doc;
  doc["method"] = result.method;
  doc["t_hat"] = std::vector<double>(result.t_hat.data(),
                                     result.t_hat.data() + result.t_hat.size());
  nlohmann::json meta;
  meta["iterations"] = result.iterations;
  if (std::isfinite(result.objective)) meta["objective"] = result.objective;
  if (std::isfinite(result.condition_estimate)) {
    meta["condition_estimate"] = result.condition_estimate;
    meta["ill_conditioned"] = result.ill_conditioned;
  }
  if (std::isfinite(result.determinant)) {
    meta["determinant"] = result.determinant;
  }
  doc["metadata"] = meta;
  doc["diagnostics"] = {{"negative_bins", result.negative_bins},
                        {"total_delta", result.total_delta}};
  return doc;
}

UnfoldResult unfold_result_from_json(const nlohmann::json& doc) {
  UnfoldResult result;
  result.method = doc.at("method").get<std::string>();
  const auto values = doc.at("t_hat").get<std::vector<double>>();
  result.t_hat = Eigen::Map<const Eigen::VectorXd>(
      values.data(), static_cast<Eigen::Index>(values.size()));
  const auto& meta = doc.at("metadata");
  result.iterations = meta.value("iterations", 0);
  result.objective =
      meta.value("objective", std::numeric_limits<double>::quiet_NaN());
  result.condition_estimate = meta.value(
      "condition_estimate", std::numeric_limits<double>::quiet_NaN());
  result.determinant =
      meta.value("determinant", std::numeric_limits<double>::quiet_NaN());
  result.ill_conditioned = meta.value("ill_conditioned", false);
  const auto& diag = doc.at("diagnostics");
  result.negative_bins = diag.value("negative_bins", 0);
  result.total_delta = diag.value("total_delta", 0.0);
  return result;
}

}  // namespace qunfold
