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

#ifndef PAIRSUB_CORE_HPP_
#define PAIRSUB_CORE_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pairsub {

// Index of an element of the ground set, in [0, m).
using ElementId = std::uint32_t;

inline constexpr double kRelativeTolerance = 1e-9;
inline constexpr double kAbsoluteTolerance = 1e-12;

// Comparison slack for two values of similar magnitude.
inline double Tolerance(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  if (!std::isfinite(scale)) return kAbsoluteTolerance;
  return std::max(kAbsoluteTolerance, kRelativeTolerance * scale);
}
inline bool ApproxEqual(double a, double b) {
  return std::fabs(a - b) <= Tolerance(a, b);
}
// a < b by more than the tolerance.
inline bool DefinitelyLess(double a, double b) { return a < b - Tolerance(a, b); }
inline bool ApproxZero(double a) { return std::fabs(a) <= kAbsoluteTolerance; }

// Largest set size an oracle will answer.
class Budget {
 public:
  static constexpr Budget Unlimited() { return Budget(kUnlimited); }
  static constexpr Budget AtMost(std::size_t k) { return Budget(k); }

  constexpr bool unlimited() const { return limit_ == kUnlimited; }
  constexpr std::size_t limit() const { return limit_; }
  constexpr bool Allows(std::size_t set_size) const { return set_size <= limit_; }
  constexpr Budget Tighten(Budget other) const {
    return Budget(std::min(limit_, other.limit_));
  }
  std::string ToString() const;

  friend constexpr bool operator==(Budget, Budget) = default;

 private:
  static constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();
  constexpr explicit Budget(std::size_t limit) : limit_(limit) {}
  std::size_t limit_;
};

// A normalized set function f: 2^X -> R on the ground set {0, ..., m-1}.
// Implementations are immutable once built and must tolerate concurrent
// Evaluate calls.
class SetFunction {
 public:
  virtual ~SetFunction() = default;

  virtual std::size_t ground_size() const = 0;
  virtual std::string_view name() const = 0;

  // `set` holds distinct in-range ids in ascending order.
  virtual double Evaluate(std::span<const ElementId> set) const = 0;

  // Abstract work for one evaluation on a set of `set_size` elements. Used
  // as a machine-independent proxy for wall-clock time.
  virtual std::uint64_t QueryCost(std::size_t set_size) const {
    return std::max<std::size_t>(set_size, 1);
  }
};

struct QueryCounts {
  std::uint64_t size1 = 0;
  std::uint64_t size2 = 0;
  std::uint64_t other = 0;
  std::uint64_t work_units = 0;

  std::uint64_t total() const { return size1 + size2 + other; }
  friend bool operator==(const QueryCounts&, const QueryCounts&) = default;
};

class QueryLog {
 public:
  void Record(std::size_t set_size, std::uint64_t cost);
  QueryCounts Snapshot() const;

 private:
  std::atomic<std::uint64_t> size1_{0};
  std::atomic<std::uint64_t> size2_{0};
  std::atomic<std::uint64_t> other_{0};
  std::atomic<std::uint64_t> work_units_{0};
};

// Access point for f. Copies share the underlying function and query log;
// WithBudget and WithFreshLog hand out views with their own log.
class Oracle {
 public:
  explicit Oracle(std::shared_ptr<const SetFunction> function,
                  Budget budget = Budget::Unlimited());

  std::size_t ground_size() const { return function_->ground_size(); }
  Budget budget() const { return budget_; }
  const SetFunction& function() const { return *function_; }

  // Budgets can only shrink: a restricted view never grants more access.
  Oracle WithBudget(Budget budget) const;
  Oracle WithFreshLog() const;
  QueryCounts counts() const { return log_->Snapshot(); }

  // Throws UnknownElement for ids >= m and BudgetExceeded when the
  // deduplicated set is larger than the budget.
  double Evaluate(std::span<const ElementId> set) const;
  double Evaluate(std::initializer_list<ElementId> set) const {
    return Evaluate(std::span<const ElementId>(set.begin(), set.size()));
  }

 private:
  std::shared_ptr<const SetFunction> function_;
  Budget budget_;
  std::shared_ptr<QueryLog> log_;
};

// f(S ∪ {x}) − f(S). Reduces to f({x}) for empty S.
double Marginal(const Oracle& oracle, ElementId x, std::span<const ElementId> set);

// min over x_j in S of f(x | x_j); f(x) when S is empty.
double UpperEstimate(const Oracle& oracle, ElementId x, std::span<const ElementId> set);

// min over A ⊆ S with |A| < k of f(x | A). The empty subset is included.
double KWiseUpperEstimate(const Oracle& oracle, ElementId x,
                          std::span<const ElementId> set, std::size_t k);

// f(x) − Σ_{x_j ∈ S} (f(x) − f(x | x_j)). Not clamped; can be negative.
double LowerEstimate(const Oracle& oracle, ElementId x, std::span<const ElementId> set);

// Lowest index whose value is within tolerance of the maximum. Entries equal
// to -inf are ineligible. Throws InvalidArgument when nothing is eligible.
ElementId ArgmaxLowestId(std::span<const double> values);

inline constexpr double kExcluded = -std::numeric_limits<double>::infinity();

// Per-element pairwise estimates conditioned on a growing partial solution.
// Each Condition() step costs one size-2 query per remaining element, and the
// constructor one size-1 query per element. Entries of selected elements hold
// kExcluded.
class EstimateCache {
 public:
  explicit EstimateCache(const Oracle& oracle);

  void Condition(ElementId chosen);

  std::span<const double> base() const { return base_; }
  std::span<const double> upper() const { return upper_; }
  std::span<const double> lower() const { return lower_; }
  const std::vector<ElementId>& conditioned_on() const { return conditioned_on_; }
  bool selected(ElementId x) const { return selected_[x] != 0; }

 private:
  Oracle oracle_;
  std::vector<double> base_;
  std::vector<double> upper_;
  std::vector<double> lower_;
  std::vector<double> pair_marginal_;
  std::vector<char> selected_;
  std::vector<ElementId> conditioned_on_;
};

// Sorted, deduplicated copy of `set`.
std::vector<ElementId> Canonical(std::span<const ElementId> set);

}  // namespace pairsub

#endif  // PAIRSUB_CORE_HPP_
