// Copyright 2026 The pairsub Authors.
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

#ifndef PAIRSUB_IO_HPP_
#define PAIRSUB_IO_HPP_

// JSON wire formats. Every document carries "schema": "pairsub/1".

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "pairsub/algorithms.hpp"
#include "pairsub/bounds.hpp"
#include "pairsub/core.hpp"
#include "pairsub/functions.hpp"
#include "pairsub/verify.hpp"

namespace pairsub {

inline constexpr const char* kSchema = "pairsub/1";

struct Instance {
  std::string type;
  Oracle oracle;
  std::optional<AdversarialSpec> adversarial;  // kept for the |V*| = n warning
};

// {"type": "weighted_coverage" | "probabilistic_coverage" | "adversarial" |
//  "modular", "params": {...}, "budget": k | "unlimited" (optional)}.
// Throws MalformedSpec on schema problems.
Instance ParseInstance(const nlohmann::json& document);
Instance LoadInstance(const std::filesystem::path& path);

nlohmann::json ToJson(const WeightedCoverageSpec& spec);
nlohmann::json ToJson(const ProbabilisticCoverageSpec& spec);
nlohmann::json ToJson(const AdversarialSpec& spec);
nlohmann::json ToJson(const ModularSpec& spec);

nlohmann::json TraceToJson(const RunTrace& trace);
RunTrace TraceFromJson(const nlohmann::json& document);

nlohmann::json BoundReportToJson(const BoundReport& report);
nlohmann::json VerificationReportToJson(const VerificationReport& report);
nlohmann::json BruteForceToJson(const BruteForceResult& result, std::size_t n);

// Finite values as numbers; ±inf as the strings "inf" / "-inf".
nlohmann::json NumberOrInf(double value);
double NumberFromJson(const nlohmann::json& value);

}  // namespace pairsub

#endif  // PAIRSUB_IO_HPP_
