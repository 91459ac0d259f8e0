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

#include "ageleak/status.h"

#include <array>
#include <string>
#include <utility>

#include "absl/strings/cord.h"

namespace ageleak {
namespace {

constexpr char kPayloadUrl[] = "type.ageleak/ErrorKind";

constexpr std::array<std::pair<ErrorKind, std::string_view>, 22> kNames{{
    {ErrorKind::kEmptyPmf, "EmptyPmf"},
    {ErrorKind::kNegativeProbability, "NegativeProbability"},
    {ErrorKind::kUnnormalizedMass, "UnnormalizedMass"},
    {ErrorKind::kNonPositiveDuration, "NonPositiveDuration"},
    {ErrorKind::kDuplicateDuration, "DuplicateDuration"},
    {ErrorKind::kTailTooHeavy, "TailTooHeavy"},
    {ErrorKind::kInvalidArgument, "InvalidArgument"},
    {ErrorKind::kInvalidBeta, "InvalidBeta"},
    {ErrorKind::kInvalidLambda, "InvalidLambda"},
    {ErrorKind::kInvalidTau, "InvalidTau"},
    {ErrorKind::kInvalidRate, "InvalidRate"},
    {ErrorKind::kNonHalfIntegerTau, "NonHalfIntegerTau"},
    {ErrorKind::kZeroRate, "ZeroRate"},
    {ErrorKind::kUnstable, "Unstable"},
    {ErrorKind::kNoFeasibleAlpha, "NoFeasibleAlpha"},
    {ErrorKind::kConvergenceFailure, "ConvergenceFailure"},
    {ErrorKind::kHorizonTooLarge, "HorizonTooLarge"},
    {ErrorKind::kInvalidConfig, "InvalidConfig"},
    {ErrorKind::kBaselinePoint, "BaselinePoint"},
    {ErrorKind::kNoOverlap, "NoOverlap"},
    {ErrorKind::kTooFewPoints, "TooFewPoints"},
    {ErrorKind::kParseError, "ParseError"},
}};

absl::StatusCode CodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConvergenceFailure:
      return absl::StatusCode::kResourceExhausted;
    case ErrorKind::kUnstable:
    case ErrorKind::kNoFeasibleAlpha:
      return absl::StatusCode::kFailedPrecondition;
    default:
      return absl::StatusCode::kInvalidArgument;
  }
}

}  // namespace

std::string_view ErrorKindName(ErrorKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "Unknown";
}

absl::Status MakeError(ErrorKind kind, std::string_view message) {
  std::string text(ErrorKindName(kind));
  text.append(": ");
  text.append(message);
  absl::Status status(CodeFor(kind), text);
  status.SetPayload(kPayloadUrl, absl::Cord(std::string(ErrorKindName(kind))));
  return status;
}

std::optional<ErrorKind> GetErrorKind(const absl::Status& status) {
  if (status.ok()) return std::nullopt;
  auto payload = status.GetPayload(kPayloadUrl);
  if (!payload.has_value()) return std::nullopt;
  const std::string name(*payload);
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

}  // namespace ageleak
