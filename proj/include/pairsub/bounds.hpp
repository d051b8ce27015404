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

#ifndef PAIRSUB_BOUNDS_HPP_
#define PAIRSUB_BOUNDS_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pairsub/algorithms.hpp"
#include "pairsub/core.hpp"

namespace pairsub {

// Multiplicative factor α ≥ 1 with α · f(x_i | S_{i-1}) ≥ max_x f(x | S_{i-1}),
// or the distinguished value +∞ whose reciprocal is exactly 0.
class AlphaFactor {
 public:
  // Throws InvalidAlpha unless value >= 1 (+inf maps to Infinite()).
  static AlphaFactor Finite(double value);
  static AlphaFactor Infinite() { return AlphaFactor(kInf); }
  static AlphaFactor One() { return AlphaFactor(1.0); }

  bool is_infinite() const { return value_ == kInf; }
  double value() const { return value_; }
  double Reciprocal() const { return is_infinite() ? 0.0 : 1.0 / value_; }

  friend bool operator==(const AlphaFactor&, const AlphaFactor&) = default;

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  explicit AlphaFactor(double value) : value_(value) {}
  double value_;
};

// How a set of factors was obtained. Wire names: theorem2, theorem3,
// theorem5, algorithm1.
enum class BoundMethod {
  kOptimisticCurvature,   // f̄ / f ratios of an optimistic run (theorem2)
  kKWiseCurvature,        // f̄_k / f ratios of a k-wise run (theorem3)
  kCardinalityCurvature,  // closed form in τ₂ for a pessimistic run (theorem5)
  kPostHocPairwise,       // pairwise-only certificate of any solution (algorithm1)
};

std::string_view BoundMethodName(BoundMethod method);
std::optional<BoundMethod> ParseBoundMethod(std::string_view name);

struct BoundReport {
  BoundMethod method = BoundMethod::kPostHocPairwise;
  std::vector<AlphaFactor> alphas;
  double gamma = 0.0;
};

// γ = 1 − exp(−(1/n) Σ 1/α_i). Any algorithm whose factors satisfy the
// defining inequality reaches f(S) ≥ γ f(S*). Throws InvalidArgument unless
// alphas.size() == n >= 1.
//
// The closed-form corollaries are this function composed with a factor
// producer: optimistic = BoundFromAlphas(AlphasOptimistic(..)), k-wise =
// BoundFromAlphas(AlphasKWise(..)), pessimistic =
// BoundFromAlphas(AlphasPessimistic(τ₂, n)).
double BoundFromAlphas(std::span<const AlphaFactor> alphas, std::size_t n);

// α_1 = α_2 = 1; α_i = f̄(x_i|S_{i-1}) / f(x_i|S_{i-1}) afterwards, with 0/0 = 1
// and positive/0 = ∞. Requires an optimistic trace (TraceMismatch otherwise)
// and an oracle that can evaluate the prefixes.
std::vector<AlphaFactor> AlphasOptimistic(const RunTrace& trace, const Oracle& full_oracle);

// As AlphasOptimistic with f̄_k and α_i = 1 for i <= k. Accepts a k-wise trace
// with the same k, or an optimistic trace when k == 2.
std::vector<AlphaFactor> AlphasKWise(const RunTrace& trace, const Oracle& full_oracle,
                                     std::size_t k);

// α_1 = α_2 = 1; α_i = 1 / (1 − min{(i−1)τ₂, 1}), ∞ once saturated.
// Throws InvalidCurvature unless τ₂ ∈ [0, 1].
std::vector<AlphaFactor> AlphasPessimistic(double tau2, std::size_t n);

// Certificate for an arbitrary ordered solution using size ≤ 2 queries only.
// Each step compares the best pairwise upper estimate among the remaining
// elements with the pairwise lower estimate of the element actually taken.
BoundReport PostHocBound(std::span<const ElementId> solution, const Oracle& oracle);

struct CurvatureReport {
  std::optional<double> traditional;  // c, when exhaustively computable
  std::size_t k = 2;
  double tau_k = 0.0;
  struct Marginal {
    ElementId x;
    std::vector<ElementId> set;
    double value;
  };
  std::vector<Marginal> marginal;  // requested c_k(x|S) values
};

// c = 1 − min_{A ⊆ X, x ∉ A, f(x) > 0} f(x|A) / f(x). Visits m·2^(m−1)
// pairs; throws InstanceTooLarge when 2^m exceeds `limit`.
double TraditionalCurvature(const Oracle& full_oracle,
                            std::uint64_t limit = kDefaultEnumerationLimit);

// c_k(x|S) = 1 − f(x|S) / f̄_k(x|S) clamped to [0, 1]; 0 when both vanish.
double KMarginalCurvature(const Oracle& full_oracle, ElementId x,
                          std::span<const ElementId> set, std::size_t k);

// τ_k = 1 − min_{x, A ⊆ X∖{x}, |A| < k, f(x) > 0} f(x|A) / f(x). For k = 2 this
// costs m + m(m−1)/2 queries of size ≤ 2. For k > 2 the subset count is
// checked against `limit` (InstanceTooLarge).
double KCardinalityCurvature(const Oracle& oracle, std::size_t k,
                             std::uint64_t limit = kDefaultEnumerationLimit);

}  // namespace pairsub

#endif  // PAIRSUB_BOUNDS_HPP_
