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

#include <stdexcept>
#include <string>

namespace qunfold {

/// Base class for all qunfold errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A calibration column has a zero total (missing calibration run).
struct ZeroColumnError : Error {
  using Error::Error;
};

/// A basis-state label is malformed (wrong length or non-binary characters).
struct BadLabelError : Error {
  using Error::Error;
};

/// A gate references an out-of-range or repeated qubit.
struct BadTargetError : Error {
  using Error::Error;
};

/// An amplitude vector with no nonzero entry cannot be normalized.
struct ZeroVectorError : Error {
  using Error::Error;
};

/// Sampling input is not a probability distribution.
struct BadDistributionError : Error {
  using Error::Error;
};

struct DimensionMismatchError : Error {
  using Error::Error;
};

/// Response assembly was asked for before all columns were measured.
struct IncompleteRunError : Error {
  using Error::Error;
};

/// Two calibration runs disagree on a column they both contain.
struct ConflictingColumnError : Error {
  using Error::Error;
};

/// The threshold-noise procedure only applies to the [-10, 10] range.
struct BadRangeError : Error {
  using Error::Error;
};

struct SingularMatrixError : Error {
  using Error::Error;
};

/// IBU prior is negative somewhere or identically zero.
struct BadPriorError : Error {
  using Error::Error;
};

/// Constrained least squares received measured counts with negative
/// entries (e.g. after background subtraction); the constraint set
/// assumes m >= 0.
struct InfeasibleError : Error {
  using Error::Error;
};

struct NoConvergenceError : Error {
  using Error::Error;
};

/// Unknown or inconsistent truth source in an experiment config.
struct BadSourceError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace qunfold
