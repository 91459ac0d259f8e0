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

#include "ageleak/policy.h"

#include <cmath>
#include <string>
#include <type_traits>

#include "absl/strings/str_format.h"
#include "ageleak/json_io.h"
#include "ageleak/optimizer.h"
#include "ageleak/status.h"

namespace ageleak {
namespace {

absl::StatusOr<double> NumberField(const nlohmann::json& value,
                                   const char* key) {
  if (!value.contains(key) || !value[key].is_number()) {
    return MakeError(ErrorKind::kParseError,
                     absl::StrFormat("policy needs numeric \"%s\"", key));
  }
  return value[key].get<double>();
}

absl::StatusOr<Slots> IntegerField(const nlohmann::json& value,
                                   const char* key) {
  AGELEAK_ASSIGN_OR_RETURN(double x, NumberField(value, key));
  if (x != std::floor(x)) {
    return MakeError(ErrorKind::kParseError,
                     absl::StrFormat("\"%s\" must be an integer", key));
  }
  return static_cast<Slots>(x);
}

absl::StatusOr<double> AlphaField(const nlohmann::json& value) {
  if (!value.contains("alpha")) return 1.0;
  AGELEAK_ASSIGN_OR_RETURN(double alpha, NumberField(value, "alpha"));
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrFormat("alpha=%g not in (0,1]", alpha));
  }
  return alpha;
}

absl::StatusOr<FinitePmf> PmfField(const nlohmann::json& value,
                                   const char* key) {
  if (!value.contains(key)) {
    return MakeError(ErrorKind::kParseError,
                     absl::StrFormat("policy needs \"%s\"", key));
  }
  return PmfFromJsonValue(value[key]);
}

absl::StatusOr<FinitePmf> GeometricWithMean(double tau) {
  if (!(tau >= 1.0) || !std::isfinite(tau)) {
    return MakeError(ErrorKind::kInvalidTau,
                     absl::StrFormat("mean %g < 1", tau));
  }
  return GeometricPmf(1.0 / tau);
}

}  // namespace

std::string PolicyKind(const Policy& policy) {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, FcfsPolicy>) return "fcfs";
        if constexpr (std::is_same_v<T, LcfsPolicy>) return "lcfs";
        return "rad";
      },
      policy);
}

const FinitePmf& PolicyPmf(const Policy& policy) {
  return std::visit(
      [](const auto& p) -> const FinitePmf& {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, RadPolicy>) {
          return p.dump;
        } else {
          return p.service;
        }
      },
      policy);
}

bool IsCoupled(const Policy& policy) {
  return !std::holds_alternative<RadPolicy>(policy);
}

absl::StatusOr<Policy> PolicyFromJsonValue(const nlohmann::json& value) {
  if (!value.is_object() || !value.contains("kind") ||
      !value["kind"].is_string()) {
    return MakeError(ErrorKind::kParseError,
                     "policy JSON needs a string \"kind\"");
  }
  const std::string kind = value["kind"].get<std::string>();
  if (kind == "lcfs") {
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, PmfField(value, "service"));
    return LcfsPolicy{std::move(pmf)};
  }
  if (kind == "fcfs") {
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, PmfField(value, "service"));
    AGELEAK_ASSIGN_OR_RETURN(double alpha, AlphaField(value));
    return FcfsPolicy{std::move(pmf), alpha};
  }
  if (kind == "rad") {
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, PmfField(value, "dump"));
    return RadPolicy{std::move(pmf)};
  }
  if (kind == "dad") {
    AGELEAK_ASSIGN_OR_RETURN(Slots tau, IntegerField(value, "tau"));
    if (tau < 1) return MakeError(ErrorKind::kInvalidTau, "tau must be >= 1");
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, DeterministicPmf(tau));
    return RadPolicy{std::move(pmf)};
  }
  if (kind == "lcfs-greedy" || kind == "fcfs-greedy") {
    AGELEAK_ASSIGN_OR_RETURN(double beta, NumberField(value, "beta"));
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, GreedySmpPmf(beta));
    if (kind == "lcfs-greedy") return LcfsPolicy{std::move(pmf)};
    AGELEAK_ASSIGN_OR_RETURN(double alpha, AlphaField(value));
    return FcfsPolicy{std::move(pmf), alpha};
  }
  if (kind == "lcfs-geo" || kind == "rad-geo" || kind == "fcfs-geo") {
    AGELEAK_ASSIGN_OR_RETURN(double tau, NumberField(value, "tau"));
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, GeometricWithMean(tau));
    if (kind == "lcfs-geo") return LcfsPolicy{std::move(pmf)};
    if (kind == "rad-geo") return RadPolicy{std::move(pmf)};
    AGELEAK_ASSIGN_OR_RETURN(double alpha, AlphaField(value));
    return FcfsPolicy{std::move(pmf), alpha};
  }
  if (kind == "rad-uniform") {
    AGELEAK_ASSIGN_OR_RETURN(double tau, NumberField(value, "tau"));
    const double k = 2.0 * tau - 1.0;
    if (!(k >= 1.0) || k != std::floor(k)) {
      return MakeError(ErrorKind::kNonHalfIntegerTau,
                       absl::StrFormat("tau=%g is not a half-integer >= 1",
                                       tau));
    }
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf,
                             UniformPmf(static_cast<Slots>(k)));
    return RadPolicy{std::move(pmf)};
  }
  if (kind == "ddad") {
    AGELEAK_ASSIGN_OR_RETURN(double rate, NumberField(value, "rate"));
    AGELEAK_ASSIGN_OR_RETURN(DitherPolicy dither, DdadPolicy(rate));
    return RadPolicy{dither.ToPmf()};
  }
  return MakeError(ErrorKind::kParseError,
                   absl::StrFormat("unknown policy kind \"%s\"", kind));
}

nlohmann::json PolicyToJsonValue(const Policy& policy) {
  nlohmann::json out;
  out["kind"] = PolicyKind(policy);
  if (const auto* fcfs = std::get_if<FcfsPolicy>(&policy)) {
    out["service"] = PmfToJsonValue(fcfs->service);
    out["alpha"] = fcfs->admit_prob;
  } else if (const auto* lcfs = std::get_if<LcfsPolicy>(&policy)) {
    out["service"] = PmfToJsonValue(lcfs->service);
  } else {
    out["dump"] = PmfToJsonValue(std::get<RadPolicy>(policy).dump);
  }
  return out;
}

}  // namespace ageleak
