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

#include "pairsub/functions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "pairsub/error.hpp"
#include "pairsub/simd/kernels.hpp"

namespace pairsub {
namespace {

void RequireFiniteNonNegative(double value, const std::string& what) {
  if (!std::isfinite(value) || value < 0.0) {
    throw Error(ErrorCode::kMalformedSpec, what + " must be finite and >= 0");
  }
}

}  // namespace

WeightedCoverageFunction::WeightedCoverageFunction(const WeightedCoverageSpec& spec)
    : ground_size_(spec.covers.size()) {
  if (ground_size_ == 0) {
    throw Error(ErrorCode::kMalformedSpec, "weighted coverage needs at least one element");
  }
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& [name, weight] : spec.universe_weights) {
    RequireFiniteNonNegative(weight, "weight of universe element '" + name + "'");
    index.emplace(name, weights_.size());
    weights_.push_back(weight);
  }
  words_ = std::max<std::size_t>(1, (weights_.size() + 63) / 64);
  masks_.assign(ground_size_ * words_, 0);
  for (std::size_t x = 0; x < ground_size_; ++x) {
    for (const std::string& name : spec.covers[x]) {
      const auto it = index.find(name);
      if (it == index.end()) {
        throw Error(ErrorCode::kMalformedSpec,
                    "element " + std::to_string(x) + " covers unknown universe element '" +
                        name + "'");
      }
      masks_[x * words_ + it->second / 64] |= std::uint64_t{1} << (it->second % 64);
    }
  }
}

double WeightedCoverageFunction::Evaluate(std::span<const ElementId> set) const {
  double total = 0.0;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t word = 0;
    for (ElementId x : set) word |= masks_[x * words_ + w];
    while (word != 0) {
      const int bit = std::countr_zero(word);
      total += weights_[w * 64 + static_cast<std::size_t>(bit)];
      word &= word - 1;
    }
  }
  return total;
}

ProbabilisticCoverageFunction::ProbabilisticCoverageFunction(
    const ProbabilisticCoverageSpec& spec)
    : ground_size_(spec.probabilities.size()), demands_(spec.demands) {
  if (ground_size_ == 0) {
    throw Error(ErrorCode::kMalformedSpec, "probabilistic coverage needs at least one station");
  }
  for (std::size_t e = 0; e < demands_.size(); ++e) {
    RequireFiniteNonNegative(demands_[e], "demand of district " + std::to_string(e));
  }
  miss_.reserve(ground_size_ * demands_.size());
  for (std::size_t x = 0; x < ground_size_; ++x) {
    const auto& row = spec.probabilities[x];
    if (row.size() != demands_.size()) {
      throw Error(ErrorCode::kMalformedSpec,
                  "station " + std::to_string(x) + " has " + std::to_string(row.size()) +
                      " probabilities for " + std::to_string(demands_.size()) +
                      " districts");
    }
    for (std::size_t e = 0; e < row.size(); ++e) {
      if (!(row[e] >= 0.0 && row[e] <= 1.0)) {
        throw Error(ErrorCode::kMalformedSpec,
                    "probability p[" + std::to_string(x) + "][" + std::to_string(e) +
                        "] outside [0, 1]");
      }
      miss_.push_back(1.0 - row[e]);
    }
  }
}

double ProbabilisticCoverageFunction::Evaluate(std::span<const ElementId> set) const {
  const simd::KernelTable& kernels = simd::ActiveKernels();
  const std::size_t districts = demands_.size();
  switch (set.size()) {
    case 0:
      return 0.0;
    case 1:
      return kernels.coverage_single(demands_.data(), MissRow(set[0]), districts);
    case 2:
      return kernels.coverage_pair(demands_.data(), MissRow(set[0]), MissRow(set[1]),
                                   districts);
    default:
      break;
  }
  thread_local std::vector<double> product;
  product.assign(MissRow(set[0]), MissRow(set[0]) + districts);
  for (std::size_t i = 1; i + 1 < set.size(); ++i) {
    kernels.multiply_into(product.data(), MissRow(set[i]), districts);
  }
  return kernels.coverage_pair(demands_.data(), product.data(), MissRow(set.back()),
                               districts);
}

std::uint64_t ProbabilisticCoverageFunction::QueryCost(std::size_t set_size) const {
  return static_cast<std::uint64_t>(std::max<std::size_t>(demands_.size(), 1)) *
         std::max<std::size_t>(set_size, 1);
}

AdversarialFunction::AdversarialFunction(const AdversarialSpec& spec) : k_(spec.k) {
  if (spec.k < 1) throw Error(ErrorCode::kMalformedSpec, "adversarial k must be >= 1");
  const std::size_t m = spec.v.size() + spec.v_star.size();
  if (m == 0) throw Error(ErrorCode::kMalformedSpec, "adversarial ground set is empty");
  std::vector<int> owner(m, -1);
  auto claim = [&](ElementId x, int part) {
    if (x >= m) {
      throw Error(ErrorCode::kMalformedSpec,
                  "V and V_star must partition {0.." + std::to_string(m - 1) +
                      "}; got element " + std::to_string(x));
    }
    if (owner[x] != -1) {
      throw Error(ErrorCode::kMalformedSpec,
                  owner[x] == part ? "element " + std::to_string(x) + " listed twice"
                                   : "V and V_star overlap at element " + std::to_string(x));
    }
    owner[x] = part;
  };
  for (ElementId x : spec.v) claim(x, 0);
  for (ElementId x : spec.v_star) claim(x, 1);
  in_v_star_.resize(m);
  for (std::size_t x = 0; x < m; ++x) in_v_star_[x] = owner[x] == 1 ? 1 : 0;
}

double AdversarialFunction::Evaluate(std::span<const ElementId> set) const {
  std::size_t in_v = 0;
  std::size_t in_star = 0;
  for (ElementId x : set) (in_v_star_[x] != 0 ? in_star : in_v) += 1;
  return static_cast<double>(std::min(in_v, k_) + in_star);
}

ModularFunction::ModularFunction(const ModularSpec& spec) : weights_(spec.weights) {
  if (weights_.empty()) throw Error(ErrorCode::kMalformedSpec, "modular needs weights");
  for (std::size_t x = 0; x < weights_.size(); ++x) {
    RequireFiniteNonNegative(weights_[x], "weight of element " + std::to_string(x));
  }
}

double ModularFunction::Evaluate(std::span<const ElementId> set) const {
  double total = 0.0;
  for (ElementId x : set) total += weights_[x];
  return total;
}

Oracle BuildWeightedCoverage(const WeightedCoverageSpec& spec) {
  return Oracle(std::make_shared<WeightedCoverageFunction>(spec));
}

Oracle BuildProbabilisticCoverage(const ProbabilisticCoverageSpec& spec) {
  return Oracle(std::make_shared<ProbabilisticCoverageFunction>(spec));
}

Oracle BuildAdversarial(const AdversarialSpec& spec) {
  return Oracle(std::make_shared<AdversarialFunction>(spec));
}

Oracle BuildModular(const ModularSpec& spec) {
  return Oracle(std::make_shared<ModularFunction>(spec));
}

}  // namespace pairsub
