// Copyright 2026 The ageleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AGELEAK_STATUS_H_
#define AGELEAK_STATUS_H_

#include <optional>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace ageleak {

// Domain error kinds. Each error status carries its kind as a payload so
// callers (and tests) can distinguish e.g. an unnormalized pmf from a
// duplicate duration without parsing messages.
enum class ErrorKind {
  kEmptyPmf,
  kNegativeProbability,
  kUnnormalizedMass,
  kNonPositiveDuration,
  kDuplicateDuration,
  kTailTooHeavy,
  kInvalidArgument,
  kInvalidBeta,
  kInvalidLambda,
  kInvalidTau,
  kInvalidRate,
  kNonHalfIntegerTau,
  kZeroRate,
  kUnstable,
  kNoFeasibleAlpha,
  kConvergenceFailure,
  kHorizonTooLarge,
  kInvalidConfig,
  kBaselinePoint,
  kNoOverlap,
  kTooFewPoints,
  kParseError,
};

std::string_view ErrorKindName(ErrorKind kind);

// Builds an error status of the canonical code that matches `kind`:
// numerical non-convergence maps to RESOURCE_EXHAUSTED, instability to
// FAILED_PRECONDITION, everything else to INVALID_ARGUMENT.
absl::Status MakeError(ErrorKind kind, std::string_view message);

// Returns the kind attached by MakeError, or nullopt for foreign statuses.
std::optional<ErrorKind> GetErrorKind(const absl::Status& status);

template <typename T>
std::optional<ErrorKind> GetErrorKind(const absl::StatusOr<T>& result) {
  return GetErrorKind(result.status());
}

}  // namespace ageleak

#define AGELEAK_STATUS_CONCAT_INNER_(x, y) x##y
#define AGELEAK_STATUS_CONCAT_(x, y) AGELEAK_STATUS_CONCAT_INNER_(x, y)

#define AGELEAK_RETURN_IF_ERROR(expr)      \
  do {                                     \
    const absl::Status _status = (expr);   \
    if (!_status.ok()) return _status;     \
  } while (0)

#define AGELEAK_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                   \
  if (!statusor.ok()) return statusor.status();              \
  lhs = *std::move(statusor)

#define AGELEAK_ASSIGN_OR_RETURN(lhs, rexpr) \
  AGELEAK_ASSIGN_OR_RETURN_IMPL_(            \
      AGELEAK_STATUS_CONCAT_(_statusor_, __LINE__), lhs, rexpr)

#endif  // AGELEAK_STATUS_H_
