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

#include "pairsub/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "combinations.hpp"
#include "pairsub/error.hpp"
#include "pairsub/simd/kernels.hpp"

namespace pairsub {
namespace {

// α for an upper bound on the best marginal over a lower bound on the taken
// one. 0/0 is exact (α = 1); a non-positive denominator under a positive
// numerator certifies nothing (α = ∞).
AlphaFactor RatioFactor(double numerator, double denominator) {
  if (ApproxZero(denominator)) {
    return ApproxZero(numerator) || numerator < 0.0 ? AlphaFactor::One()
                                                     : AlphaFactor::Infinite();
  }
  if (denominator < 0.0) return AlphaFactor::Infinite();
  // Equal up to rounding counts as exact; rounding can also push f̄/f a hair
  // below 1.
  if (ApproxEqual(numerator, denominator)) return AlphaFactor::One();
  return AlphaFactor::Finite(std::max(1.0, numerator / denominator));
}

std::vector<ElementId> Prefix(const RunTrace& trace, std::size_t count) {
  std::vector<ElementId> prefix;
  prefix.reserve(count);
  for (std::size_t j = 0; j < count; ++j) prefix.push_back(trace.selections[j].element);
  return prefix;
}

}  // namespace

AlphaFactor AlphaFactor::Finite(double value) {
  if (value == kInf) return Infinite();
  if (!(value >= 1.0)) {
    throw Error(ErrorCode::kInvalidAlpha,
                "approximation factor " + std::to_string(value) + " is below 1");
  }
  return AlphaFactor(value);
}

std::string_view BoundMethodName(BoundMethod method) {
  switch (method) {
    case BoundMethod::kOptimisticCurvature:
      return "theorem2";
    case BoundMethod::kKWiseCurvature:
      return "theorem3";
    case BoundMethod::kCardinalityCurvature:
      return "theorem5";
    case BoundMethod::kPostHocPairwise:
      return "algorithm1";
  }
  return "unknown";
}

std::optional<BoundMethod> ParseBoundMethod(std::string_view name) {
  for (BoundMethod m : {BoundMethod::kOptimisticCurvature, BoundMethod::kKWiseCurvature,
                        BoundMethod::kCardinalityCurvature, BoundMethod::kPostHocPairwise}) {
    if (BoundMethodName(m) == name) return m;
  }
  return std::nullopt;
}

double BoundFromAlphas(std::span<const AlphaFactor> alphas, std::size_t n) {
  if (n == 0 || alphas.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected " + std::to_string(n) + " factors (n >= 1), got " +
                    std::to_string(alphas.size()));
  }
  double sum = 0.0;
  for (const AlphaFactor& alpha : alphas) sum += alpha.Reciprocal();
  return 1.0 - std::exp(-sum / static_cast<double>(n));
}

std::vector<AlphaFactor> AlphasOptimistic(const RunTrace& trace, const Oracle& full_oracle) {
  if (trace.algorithm != Algorithm::kOptimistic) {
    throw Error(ErrorCode::kTraceMismatch, "optimistic factors need an optimistic trace, got " +
                                               std::string(AlgorithmName(trace.algorithm)));
  }
  std::vector<AlphaFactor> alphas;
  for (std::size_t i = 1; i <= trace.selections.size(); ++i) {
    if (i <= 2) {
      alphas.push_back(AlphaFactor::One());
      continue;
    }
    const std::vector<ElementId> prefix = Prefix(trace, i - 1);
    const ElementId x = trace.selections[i - 1].element;
    alphas.push_back(RatioFactor(UpperEstimate(full_oracle, x, prefix),
                                 Marginal(full_oracle, x, prefix)));
  }
  return alphas;
}

std::vector<AlphaFactor> AlphasKWise(const RunTrace& trace, const Oracle& full_oracle,
                                     std::size_t k) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "k-wise factors need k >= 2");
  const bool kwise_match =
      trace.algorithm == Algorithm::kKWiseOptimistic && trace.k.value_or(0) == k;
  const bool pairwise_match = trace.algorithm == Algorithm::kOptimistic && k == 2;
  if (!kwise_match && !pairwise_match) {
    throw Error(ErrorCode::kTraceMismatch,
                "k-wise factors with k = " + std::to_string(k) + " do not apply to a " +
                    std::string(AlgorithmName(trace.algorithm)) + " trace");
  }
  std::vector<AlphaFactor> alphas;
  for (std::size_t i = 1; i <= trace.selections.size(); ++i) {
    if (i <= k) {
      alphas.push_back(AlphaFactor::One());
      continue;
    }
    const std::vector<ElementId> prefix = Prefix(trace, i - 1);
    const ElementId x = trace.selections[i - 1].element;
    alphas.push_back(RatioFactor(KWiseUpperEstimate(full_oracle, x, prefix, k),
                                 Marginal(full_oracle, x, prefix)));
  }
  return alphas;
}

std::vector<AlphaFactor> AlphasPessimistic(double tau2, std::size_t n) {
  if (!(tau2 >= 0.0 && tau2 <= 1.0)) {
    throw Error(ErrorCode::kInvalidCurvature,
                "tau2 = " + std::to_string(tau2) + " outside [0, 1]");
  }
  std::vector<AlphaFactor> alphas;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i <= 2) {
      alphas.push_back(AlphaFactor::One());
      continue;
    }
    const double saturation = std::min(static_cast<double>(i - 1) * tau2, 1.0);
    alphas.push_back(saturation >= 1.0 ? AlphaFactor::Infinite()
                                       : AlphaFactor::Finite(1.0 / (1.0 - saturation)));
  }
  return alphas;
}

BoundReport PostHocBound(std::span<const ElementId> solution, const Oracle& oracle) {
  const std::size_t m = oracle.ground_size();
  if (solution.size() > m) {
    throw Error(ErrorCode::kCardinalityTooLarge,
                "solution of size " + std::to_string(solution.size()) +
                    " exceeds ground size " + std::to_string(m));
  }
  std::vector<char> seen(m, 0);
  for (ElementId x : solution) {
    if (x >= m) throw Error(ErrorCode::kUnknownElement, "element " + std::to_string(x));
    if (seen[x] != 0) {
      throw Error(ErrorCode::kDuplicateElement, "element " + std::to_string(x));
    }
    seen[x] = 1;
  }
  if (solution.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "post-hoc bound needs a non-empty solution");
  }

  // The restricted view turns any query larger than a pair into an error.
  const Oracle pairwise = oracle.WithBudget(Budget::AtMost(2));
  EstimateCache cache(pairwise);
  BoundReport report;
  report.method = BoundMethod::kPostHocPairwise;
  const simd::KernelTable& kernels = simd::ActiveKernels();
  for (std::size_t i = 0; i < solution.size(); ++i) {
    const double best_upper = kernels.max_value(cache.upper().data(), m);
    const double taken_lower = cache.lower()[solution[i]];
    if (taken_lower < 0.0 && !ApproxZero(taken_lower)) {
      report.alphas.push_back(AlphaFactor::Infinite());
    } else {
      report.alphas.push_back(RatioFactor(best_upper, taken_lower));
    }
    if (i + 1 < solution.size()) cache.Condition(solution[i]);
  }
  report.gamma = BoundFromAlphas(report.alphas, solution.size());
  return report;
}

double TraditionalCurvature(const Oracle& full_oracle, std::uint64_t limit) {
  const std::size_t m = full_oracle.ground_size();
  if (m >= 63 || (std::uint64_t{1} << m) > limit) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "traditional curvature enumerates 2^" + std::to_string(m) +
                    " subsets, above limit " + std::to_string(limit));
  }
  const std::uint64_t subsets = std::uint64_t{1} << m;
  std::vector<double> table(subsets);
  std::vector<ElementId> members;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    members.clear();
    for (std::size_t x = 0; x < m; ++x) {
      if ((mask >> x) & 1U) members.push_back(static_cast<ElementId>(x));
    }
    table[mask] = members.empty() ? 0.0 : full_oracle.Evaluate(members);
  }
  double worst = 1.0;
  for (std::size_t x = 0; x < m; ++x) {
    const std::uint64_t bit = std::uint64_t{1} << x;
    const double single = table[bit];
    if (single <= kAbsoluteTolerance) continue;
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      if (mask & bit) continue;
      worst = std::min(worst, (table[mask | bit] - table[mask]) / single);
    }
  }
  return std::clamp(1.0 - worst, 0.0, 1.0);
}

double KMarginalCurvature(const Oracle& full_oracle, ElementId x,
                          std::span<const ElementId> set, std::size_t k) {
  const double estimate = KWiseUpperEstimate(full_oracle, x, set, k);
  const double marginal = Marginal(full_oracle, x, set);
  if (estimate <= kAbsoluteTolerance) return 0.0;
  return std::clamp(1.0 - marginal / estimate, 0.0, 1.0);
}

double KCardinalityCurvature(const Oracle& oracle, std::size_t k, std::uint64_t limit) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  const std::size_t m = oracle.ground_size();
  std::vector<double> singles(m);
  for (std::size_t x = 0; x < m; ++x) singles[x] = oracle.Evaluate({static_cast<ElementId>(x)});
  double worst = 1.0;
  if (k == 1 || m == 1) return 0.0;
  if (k == 2) {
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = x + 1; y < m; ++y) {
        const double pair =
            oracle.Evaluate({static_cast<ElementId>(x), static_cast<ElementId>(y)});
        if (singles[x] > kAbsoluteTolerance) {
          worst = std::min(worst, (pair - singles[y]) / singles[x]);
        }
        if (singles[y] > kAbsoluteTolerance) {
          worst = std::min(worst, (pair - singles[x]) / singles[y]);
        }
      }
    }
    return std::clamp(1.0 - worst, 0.0, 1.0);
  }
  const std::size_t max_size = std::min(k - 1, m - 1);
  std::uint64_t per_element = 0;
  for (std::size_t j = 1; j <= max_size; ++j) {
    per_element += BinomialSaturating(m - 1, j);
    if (per_element > limit) break;
  }
  if (per_element > limit / m) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "k-cardinality curvature would scan more than " + std::to_string(limit) +
                    " (x, A) pairs");
  }
  std::vector<ElementId> others;
  std::vector<ElementId> subset;
  for (std::size_t x = 0; x < m; ++x) {
    if (singles[x] <= kAbsoluteTolerance) continue;
    others.clear();
    for (std::size_t y = 0; y < m; ++y) {
      if (y != x) others.push_back(static_cast<ElementId>(y));
    }
    for (std::size_t size = 1; size <= max_size; ++size) {
      internal::ForEachCombination(others.size(), size, [&](std::span<const std::size_t> pick) {
        subset.clear();
        for (std::size_t index : pick) subset.push_back(others[index]);
        worst = std::min(worst,
                         Marginal(oracle, static_cast<ElementId>(x), subset) / singles[x]);
      });
    }
  }
  return std::clamp(1.0 - worst, 0.0, 1.0);
}

}  // namespace pairsub
