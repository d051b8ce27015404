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

#include "pairsub/core.hpp"

#include <array>
#include <utility>

#include "combinations.hpp"
#include "pairsub/error.hpp"
#include "pairsub/simd/kernels.hpp"

namespace pairsub {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kUnknownElement: return "UnknownElement";
    case ErrorCode::kDuplicateElement: return "DuplicateElement";
    case ErrorCode::kCardinalityTooLarge: return "CardinalityTooLarge";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kMalformedSpec: return "MalformedSpec";
    case ErrorCode::kInvalidAlpha: return "InvalidAlpha";
    case ErrorCode::kInvalidCurvature: return "InvalidCurvature";
    case ErrorCode::kTraceMismatch: return "TraceMismatch";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kNegativeDemand: return "NegativeDemand";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kGridMismatch: return "GridMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

std::string Budget::ToString() const {
  return unlimited() ? std::string("unlimited") : std::to_string(limit_);
}

void QueryLog::Record(std::size_t set_size, std::uint64_t cost) {
  switch (set_size) {
    case 1:
      size1_.fetch_add(1, std::memory_order_relaxed);
      break;
    case 2:
      size2_.fetch_add(1, std::memory_order_relaxed);
      break;
    default:
      other_.fetch_add(1, std::memory_order_relaxed);
      break;
  }
  work_units_.fetch_add(cost, std::memory_order_relaxed);
}

QueryCounts QueryLog::Snapshot() const {
  QueryCounts counts;
  counts.size1 = size1_.load(std::memory_order_relaxed);
  counts.size2 = size2_.load(std::memory_order_relaxed);
  counts.other = other_.load(std::memory_order_relaxed);
  counts.work_units = work_units_.load(std::memory_order_relaxed);
  return counts;
}

Oracle::Oracle(std::shared_ptr<const SetFunction> function, Budget budget)
    : function_(std::move(function)),
      budget_(budget),
      log_(std::make_shared<QueryLog>()) {
  if (function_ == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "oracle requires a set function");
  }
}

Oracle Oracle::WithBudget(Budget budget) const {
  return Oracle(function_, budget_.Tighten(budget));
}

Oracle Oracle::WithFreshLog() const { return Oracle(function_, budget_); }

std::vector<ElementId> Canonical(std::span<const ElementId> set) {
  std::vector<ElementId> out(set.begin(), set.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double Oracle::Evaluate(std::span<const ElementId> set) const {
  const std::size_t m = function_->ground_size();
  for (ElementId x : set) {
    if (x >= m) {
      throw Error(ErrorCode::kUnknownElement,
                  "element " + std::to_string(x) + " outside ground set of size " +
                      std::to_string(m));
    }
  }
  auto answer = [&](std::span<const ElementId> canonical) {
    if (!budget_.Allows(canonical.size())) {
      throw Error(ErrorCode::kBudgetExceeded,
                  "query of size " + std::to_string(canonical.size()) +
                      " exceeds budget " + budget_.ToString());
    }
    log_->Record(canonical.size(), function_->QueryCost(canonical.size()));
    return function_->Evaluate(canonical);
  };
  // Small sets avoid the heap; pair queries dominate the pairwise algorithms.
  constexpr std::size_t kInline = 8;
  if (set.size() <= kInline) {
    std::array<ElementId, kInline> buffer{};
    std::copy(set.begin(), set.end(), buffer.begin());
    auto first = buffer.begin();
    auto last = first + static_cast<std::ptrdiff_t>(set.size());
    std::sort(first, last);
    last = std::unique(first, last);
    return answer(std::span<const ElementId>(buffer.data(),
                                             static_cast<std::size_t>(last - first)));
  }
  const std::vector<ElementId> canonical = Canonical(set);
  return answer(canonical);
}

namespace {

void RequireAbsent(ElementId x, std::span<const ElementId> set) {
  if (std::find(set.begin(), set.end(), x) != set.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "element " + std::to_string(x) + " is already in the conditioning set");
  }
}

// f(x | {y}) from pair and singleton queries.
double PairMarginal(const Oracle& oracle, ElementId x, ElementId y) {
  return oracle.Evaluate({x, y}) - oracle.Evaluate({y});
}

}  // namespace

double Marginal(const Oracle& oracle, ElementId x, std::span<const ElementId> set) {
  RequireAbsent(x, set);
  if (set.empty()) return oracle.Evaluate({x});
  std::vector<ElementId> with_x(set.begin(), set.end());
  with_x.push_back(x);
  return oracle.Evaluate(with_x) - oracle.Evaluate(set);
}

double UpperEstimate(const Oracle& oracle, ElementId x, std::span<const ElementId> set) {
  RequireAbsent(x, set);
  if (set.empty()) return oracle.Evaluate({x});
  double best = std::numeric_limits<double>::infinity();
  for (ElementId y : set) best = std::min(best, PairMarginal(oracle, x, y));
  return best;
}

double KWiseUpperEstimate(const Oracle& oracle, ElementId x,
                          std::span<const ElementId> set, std::size_t k) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "k-wise estimate needs k >= 2");
  RequireAbsent(x, set);
  double best = oracle.Evaluate({x});
  const std::size_t max_size = std::min(k - 1, set.size());
  std::vector<ElementId> subset;
  for (std::size_t size = 1; size <= max_size; ++size) {
    internal::ForEachCombination(set.size(), size, [&](std::span<const std::size_t> pick) {
      subset.clear();
      for (std::size_t index : pick) subset.push_back(set[index]);
      best = std::min(best, Marginal(oracle, x, subset));
    });
  }
  return best;
}

double LowerEstimate(const Oracle& oracle, ElementId x, std::span<const ElementId> set) {
  RequireAbsent(x, set);
  const double single = oracle.Evaluate({x});
  double lower = single;
  for (ElementId y : set) lower -= single - PairMarginal(oracle, x, y);
  return lower;
}

ElementId ArgmaxLowestId(std::span<const double> values) {
  const double best = simd::ActiveKernels().max_value(values.data(), values.size());
  if (best == kExcluded) {
    throw Error(ErrorCode::kInvalidArgument, "argmax over an empty candidate set");
  }
  const double threshold = best - Tolerance(best, best);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != kExcluded && values[i] >= threshold) {
      return static_cast<ElementId>(i);
    }
  }
  return static_cast<ElementId>(values.size() - 1);  // unreachable
}

EstimateCache::EstimateCache(const Oracle& oracle)
    : oracle_(oracle),
      base_(oracle.ground_size()),
      pair_marginal_(oracle.ground_size()),
      selected_(oracle.ground_size(), 0) {
  for (std::size_t x = 0; x < base_.size(); ++x) {
    base_[x] = oracle_.Evaluate({static_cast<ElementId>(x)});
  }
  upper_ = base_;
  lower_ = base_;
}

void EstimateCache::Condition(ElementId chosen) {
  const std::size_t m = base_.size();
  if (chosen >= m) {
    throw Error(ErrorCode::kUnknownElement, "element " + std::to_string(chosen));
  }
  if (selected_[chosen] != 0) {
    throw Error(ErrorCode::kDuplicateElement, "element " + std::to_string(chosen));
  }
  selected_[chosen] = 1;
  conditioned_on_.push_back(chosen);
  const double chosen_value = base_[chosen];
  for (std::size_t x = 0; x < m; ++x) {
    if (selected_[x] != 0) {
      pair_marginal_[x] = kExcluded;
      continue;
    }
    pair_marginal_[x] =
        oracle_.Evaluate({static_cast<ElementId>(x), chosen}) - chosen_value;
  }
  const simd::KernelTable& kernels = simd::ActiveKernels();
  kernels.min_update(upper_.data(), pair_marginal_.data(), m);
  kernels.redundancy_update(lower_.data(), base_.data(), pair_marginal_.data(), m);
  for (std::size_t x = 0; x < m; ++x) {
    if (selected_[x] != 0) {
      upper_[x] = kExcluded;
      lower_[x] = kExcluded;
    }
  }
}

}  // namespace pairsub
