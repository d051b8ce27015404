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

#ifndef PAIRSUB_VERIFY_HPP_
#define PAIRSUB_VERIFY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pairsub/core.hpp"

namespace pairsub {

enum class Property {
  kNormalized,
  kMonotone,
  kSubmodular,
  kSupermodularityOfConditioning,
  kPairwiseRedundancyBound,
  kMarginalLowerBound,
  kNemhauserInequality,
};

std::string_view PropertyName(Property property);
std::optional<Property> ParseProperty(std::string_view name);
std::vector<Property> AllProperties();

enum class CheckMode { kAuto, kExhaustive, kSampled };

struct CheckOptions {
  // 0 selects the per-property default (monotone 12, marginal lower bound 10,
  // everything else 8).
  std::size_t exhaustive_limit = 0;
  CheckMode mode = CheckMode::kAuto;
  std::uint64_t seed = 0;
  std::size_t samples = 20000;
  // Restrict the conditioning check to S disjoint from B ∪ C. The default
  // quantifies over every S.
  bool soc_disjoint = false;
};

// Witness layout per property (each entry is an ascending id list):
//   normalized                      [∅]
//   monotone                        [A, B]        A ⊆ B, f(A) > f(B)
//   submodular                      [A, B, {x}]   f(x|A) < f(x|B)
//   supermodularity_of_conditioning [S, A, B, C]
//   pairwise_redundancy_bound       [A, B, C]
//   marginal_lower_bound            [{x}, S]      f(x|S) < f̲(x|S)
//   nemhauser_inequality            [S, T]
// lhs/rhs are the two sides of the inequality as stated for the property.
struct VerificationReport {
  Property property = Property::kNormalized;
  bool holds = true;
  std::optional<std::vector<std::vector<ElementId>>> witness;
  std::uint64_t instances_checked = 0;
  bool exhaustive = true;
  std::optional<double> lhs;
  std::optional<double> rhs;
};

VerificationReport CheckNormalized(const Oracle& oracle);
VerificationReport CheckMonotone(const Oracle& oracle, const CheckOptions& options = {});
VerificationReport CheckSubmodular(const Oracle& oracle, const CheckOptions& options = {});
VerificationReport CheckSupermodularityOfConditioning(const Oracle& oracle,
                                                      const CheckOptions& options = {});
VerificationReport CheckPairwiseRedundancyBound(const Oracle& oracle,
                                                const CheckOptions& options = {});
VerificationReport CheckMarginalLowerBound(const Oracle& oracle,
                                           const CheckOptions& options = {});
VerificationReport CheckNemhauserInequality(const Oracle& oracle,
                                            const CheckOptions& options = {});

VerificationReport Check(Property property, const Oracle& oracle,
                         const CheckOptions& options = {});

// Re-evaluates a failing report's witness through the oracle and returns true
// when the violation reproduces.
bool ReplayWitness(const Oracle& oracle, const VerificationReport& report);

}  // namespace pairsub

#endif  // PAIRSUB_VERIFY_HPP_
