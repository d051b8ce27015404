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

#include "pairsub/algorithms.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "combinations.hpp"
#include "pairsub/error.hpp"

namespace pairsub {
namespace {

void RequireCardinality(const Oracle& oracle, std::size_t n) {
  if (n > oracle.ground_size()) {
    throw Error(ErrorCode::kCardinalityTooLarge,
                "n = " + std::to_string(n) + " exceeds ground size " +
                    std::to_string(oracle.ground_size()));
  }
}

void RequireBudget(const Oracle& oracle, Budget needed, Algorithm algorithm) {
  if (oracle.budget().limit() < needed.limit()) {
    throw Error(ErrorCode::kBudgetExceeded,
                std::string(AlgorithmName(algorithm)) + " needs budget " +
                    needed.ToString() + " but the oracle allows " +
                    oracle.budget().ToString());
  }
}

RunTrace StartTrace(Algorithm algorithm, std::size_t n) {
  RunTrace trace;
  trace.algorithm = algorithm;
  trace.n = n;
  trace.selections.reserve(n);
  return trace;
}

void Finish(RunTrace& trace, const Oracle& counted) {
  trace.final_set = trace.Sequence();
  std::sort(trace.final_set.begin(), trace.final_set.end());
  trace.query_counts = counted.counts();
}

}  // namespace

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kFull:
      return "full";
    case Algorithm::kUninformed:
      return "uninformed";
    case Algorithm::kOptimistic:
      return "optimistic";
    case Algorithm::kPessimistic:
      return "pessimistic";
    case Algorithm::kKWiseOptimistic:
      return "k_wise_optimistic";
  }
  return "unknown";
}

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kFull, Algorithm::kUninformed, Algorithm::kOptimistic,
                      Algorithm::kPessimistic, Algorithm::kKWiseOptimistic}) {
    if (AlgorithmName(a) == name) return a;
  }
  if (name == "greedy" || name == "full_greedy") return Algorithm::kFull;
  if (name == "k_wise" || name == "kwise") return Algorithm::kKWiseOptimistic;
  return std::nullopt;
}

Budget RequiredBudget(Algorithm algorithm, std::size_t n, std::size_t k) {
  switch (algorithm) {
    case Algorithm::kFull:
      return Budget::AtMost(n);
    case Algorithm::kUninformed:
      return Budget::AtMost(1);
    case Algorithm::kOptimistic:
    case Algorithm::kPessimistic:
      return Budget::AtMost(2);
    case Algorithm::kKWiseOptimistic:
      return Budget::AtMost(k);
  }
  return Budget::Unlimited();
}

std::vector<ElementId> RunTrace::Sequence() const {
  std::vector<ElementId> out;
  out.reserve(selections.size());
  for (const Selection& s : selections) out.push_back(s.element);
  return out;
}

RunTrace GreedyFull(const Oracle& oracle, std::size_t n) {
  RequireCardinality(oracle, n);
  RequireBudget(oracle, RequiredBudget(Algorithm::kFull, n, 0), Algorithm::kFull);
  const Oracle counted = oracle.WithFreshLog();
  const std::size_t m = oracle.ground_size();
  RunTrace trace = StartTrace(Algorithm::kFull, n);

  std::vector<char> chosen(m, 0);
  std::vector<ElementId> current;
  std::vector<double> gains(m);
  std::vector<double> values(m);
  double current_value = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    current.push_back(0);  // slot for the candidate
    for (std::size_t x = 0; x < m; ++x) {
      if (chosen[x] != 0) {
        gains[x] = kExcluded;
        continue;
      }
      current.back() = static_cast<ElementId>(x);
      values[x] = counted.Evaluate(current);
      gains[x] = values[x] - current_value;
    }
    const ElementId best = ArgmaxLowestId(gains);
    current.back() = best;
    chosen[best] = 1;
    current_value = values[best];
    trace.selections.push_back({i, best, gains[best]});
  }
  Finish(trace, counted);
  return trace;
}

RunTrace GreedyUninformed(const Oracle& oracle, std::size_t n) {
  RequireCardinality(oracle, n);
  const Oracle counted = oracle.WithBudget(RequiredBudget(Algorithm::kUninformed, n, 0));
  const std::size_t m = oracle.ground_size();
  RunTrace trace = StartTrace(Algorithm::kUninformed, n);
  std::vector<double> singles(m);
  for (std::size_t x = 0; x < m; ++x) {
    singles[x] = counted.Evaluate({static_cast<ElementId>(x)});
  }
  for (std::size_t i = 1; i <= n; ++i) {
    const ElementId best = ArgmaxLowestId(singles);
    trace.selections.push_back({i, best, singles[best]});
    singles[best] = kExcluded;
  }
  Finish(trace, counted);
  return trace;
}

namespace {

enum class Estimate { kUpper, kLower };

RunTrace PairwiseGreedy(const Oracle& oracle, std::size_t n, Algorithm algorithm,
                        Estimate which) {
  RequireCardinality(oracle, n);
  const Oracle counted = oracle.WithBudget(RequiredBudget(algorithm, n, 0));
  RunTrace trace = StartTrace(algorithm, n);
  if (n == 0) {
    Finish(trace, counted);
    return trace;
  }
  EstimateCache cache(counted);
  for (std::size_t i = 1; i <= n; ++i) {
    const std::span<const double> values =
        which == Estimate::kUpper ? cache.upper() : cache.lower();
    const ElementId best = ArgmaxLowestId(values);
    trace.selections.push_back({i, best, values[best]});
    if (i < n) cache.Condition(best);
  }
  Finish(trace, counted);
  return trace;
}

}  // namespace

RunTrace GreedyOptimistic(const Oracle& oracle, std::size_t n) {
  return PairwiseGreedy(oracle, n, Algorithm::kOptimistic, Estimate::kUpper);
}

RunTrace GreedyPessimistic(const Oracle& oracle, std::size_t n) {
  return PairwiseGreedy(oracle, n, Algorithm::kPessimistic, Estimate::kLower);
}

RunTrace GreedyKWiseOptimistic(const Oracle& oracle, std::size_t n, std::size_t k) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "k-wise optimistic needs k >= 2");
  RequireCardinality(oracle, n);
  const Oracle counted = oracle.WithBudget(RequiredBudget(Algorithm::kKWiseOptimistic, n, k));
  const std::size_t m = oracle.ground_size();
  RunTrace trace = StartTrace(Algorithm::kKWiseOptimistic, n);
  trace.k = k;

  // estimates[x] = min over A ⊆ S, |A| < k of f(x | A). Each step only
  // scans the subsets that contain the newly selected element.
  std::vector<double> estimates(m);
  for (std::size_t x = 0; x < m; ++x) {
    estimates[x] = counted.Evaluate({static_cast<ElementId>(x)});
  }
  std::vector<ElementId> selected;
  struct Conditioning {
    std::vector<ElementId> members;
    double value;
  };
  std::vector<Conditioning> fresh;
  std::vector<ElementId> with_x;
  for (std::size_t i = 1; i <= n; ++i) {
    const ElementId best = ArgmaxLowestId(estimates);
    trace.selections.push_back({i, best, estimates[best]});
    estimates[best] = kExcluded;
    if (i == n) break;

    // New subsets: {best} ∪ B with B ⊆ previous selections, |B| <= k - 2.
    fresh.clear();
    const std::size_t prior = selected.size();
    const std::size_t max_extra = std::min(k - 2, prior);
    for (std::size_t extra = 0; extra <= max_extra; ++extra) {
      internal::ForEachCombination(prior, extra, [&](std::span<const std::size_t> pick) {
        Conditioning c;
        for (std::size_t index : pick) c.members.push_back(selected[index]);
        c.members.push_back(best);
        c.value = counted.Evaluate(c.members);
        fresh.push_back(std::move(c));
      });
    }
    selected.push_back(best);
    for (std::size_t x = 0; x < m; ++x) {
      if (estimates[x] == kExcluded) continue;
      for (const Conditioning& c : fresh) {
        with_x.assign(c.members.begin(), c.members.end());
        with_x.push_back(static_cast<ElementId>(x));
        estimates[x] = std::min(estimates[x], counted.Evaluate(with_x) - c.value);
      }
    }
  }
  Finish(trace, counted);
  return trace;
}

RunTrace RunAlgorithm(Algorithm algorithm, const Oracle& oracle, std::size_t n,
                      std::size_t k) {
  switch (algorithm) {
    case Algorithm::kFull:
      return GreedyFull(oracle, n);
    case Algorithm::kUninformed:
      return GreedyUninformed(oracle, n);
    case Algorithm::kOptimistic:
      return GreedyOptimistic(oracle, n);
    case Algorithm::kPessimistic:
      return GreedyPessimistic(oracle, n);
    case Algorithm::kKWiseOptimistic:
      return GreedyKWiseOptimistic(oracle, n, k);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm");
}

void AuditTrace(RunTrace& trace, const Oracle& full_oracle) {
  std::vector<double> marginals;
  std::vector<ElementId> prefix;
  for (const Selection& s : trace.selections) {
    marginals.push_back(Marginal(full_oracle, s.element, prefix));
    prefix.push_back(s.element);
  }
  trace.true_marginals = std::move(marginals);
}

std::uint64_t BinomialSaturating(std::size_t m, std::size_t n) {
  if (n > m) return 0;
  n = std::min(n, m - n);
  std::uint64_t result = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    // result * (m - n + i) / i is integral; divide out the gcd first.
    const std::uint64_t g = std::gcd(result, std::uint64_t{i});
    const std::uint64_t factor = (m - n + i) / (i / g);
    if (__builtin_mul_overflow(result / g, factor, &result)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return result;
}

BruteForceResult BruteForceOptimal(const Oracle& oracle, std::size_t n,
                                   std::uint64_t limit) {
  RequireCardinality(oracle, n);
  const std::size_t m = oracle.ground_size();
  const std::size_t size = std::min(n, m);
  const std::uint64_t count = BinomialSaturating(m, size);
  if (count > limit) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "C(" + std::to_string(m) + ", " + std::to_string(size) + ") = " +
                    (count == std::numeric_limits<std::uint64_t>::max()
                         ? std::string("overflow")
                         : std::to_string(count)) +
                    " subsets exceeds limit " + std::to_string(limit));
  }
  if (!oracle.budget().Allows(size)) {
    throw Error(ErrorCode::kBudgetExceeded, "brute force needs sets of size " +
                                                std::to_string(size));
  }
  BruteForceResult result;
  std::vector<ElementId> candidate(size);
  bool first = true;
  internal::ForEachCombination(m, size, [&](std::span<const std::size_t> pick) {
    for (std::size_t i = 0; i < size; ++i) candidate[i] = static_cast<ElementId>(pick[i]);
    const double value = oracle.Evaluate(candidate);
    ++result.subsets_examined;
    if (first || DefinitelyLess(result.value, value)) {
      result.value = value;
      result.set = candidate;
      first = false;
    }
  });
  return result;
}

}  // namespace pairsub
