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

#ifndef PAIRSUB_ALGORITHMS_HPP_
#define PAIRSUB_ALGORITHMS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pairsub/core.hpp"

namespace pairsub {

enum class Algorithm {
  kFull,              // greedy on true marginals, unlimited budget
  kUninformed,        // greedy on singleton values
  kOptimistic,        // greedy on the pairwise upper estimate
  kPessimistic,       // greedy on the pairwise lower estimate
  kKWiseOptimistic,   // greedy on the k-wise upper estimate
};

std::string_view AlgorithmName(Algorithm algorithm);
std::optional<Algorithm> ParseAlgorithm(std::string_view name);
// Smallest oracle budget the algorithm needs for cardinality n.
Budget RequiredBudget(Algorithm algorithm, std::size_t n, std::size_t k);

struct Selection {
  std::size_t iteration;  // 1-based
  ElementId element;
  double estimate;        // value that won the argmax
};

struct RunTrace {
  Algorithm algorithm = Algorithm::kFull;
  std::size_t n = 0;
  std::optional<std::size_t> k;  // set for k-wise runs
  std::vector<Selection> selections;
  // f(x_i | S_{i-1}) from a full-budget audit pass; see AuditTrace.
  std::optional<std::vector<double>> true_marginals;
  std::vector<ElementId> final_set;  // ascending
  QueryCounts query_counts;          // queries issued by the run itself

  // Selected elements in selection order.
  std::vector<ElementId> Sequence() const;
};

// All greedy runs break ties (within tolerance) toward the lowest id and throw
// CardinalityTooLarge when n exceeds the ground size.
RunTrace GreedyFull(const Oracle& oracle, std::size_t n);
RunTrace GreedyUninformed(const Oracle& oracle, std::size_t n);
RunTrace GreedyOptimistic(const Oracle& oracle, std::size_t n);
RunTrace GreedyPessimistic(const Oracle& oracle, std::size_t n);
RunTrace GreedyKWiseOptimistic(const Oracle& oracle, std::size_t n, std::size_t k);

RunTrace RunAlgorithm(Algorithm algorithm, const Oracle& oracle, std::size_t n,
                      std::size_t k = 2);

// Fills trace.true_marginals using `full_oracle`, which must allow sets of
// size n.
void AuditTrace(RunTrace& trace, const Oracle& full_oracle);

inline constexpr std::uint64_t kDefaultEnumerationLimit = 1'000'000;

struct BruteForceResult {
  std::vector<ElementId> set;  // ascending
  double value = 0.0;
  std::uint64_t subsets_examined = 0;
};

// Exact maximizer over subsets of size min(n, m) (monotone f), scanning in
// lexicographic order and keeping the first of tied values.
BruteForceResult BruteForceOptimal(const Oracle& oracle, std::size_t n,
                                   std::uint64_t limit = kDefaultEnumerationLimit);

// C(m, n), saturating at UINT64_MAX.
std::uint64_t BinomialSaturating(std::size_t m, std::size_t n);

}  // namespace pairsub

#endif  // PAIRSUB_ALGORITHMS_HPP_
