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

#ifndef PAIRSUB_FUNCTIONS_HPP_
#define PAIRSUB_FUNCTIONS_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pairsub/core.hpp"

namespace pairsub {

// f(S) = Σ weight(u) over u ∈ ∪_{x∈S} covers[x].
struct WeightedCoverageSpec {
  std::map<std::string, double> universe_weights;
  // covers[x] lists the universe elements covered by ground element x.
  std::vector<std::vector<std::string>> covers;
};

// f(S) = Σ_e (1 − Π_{x∈S} (1 − p[x][e])) · demand[e].
struct ProbabilisticCoverageSpec {
  std::vector<double> demands;
  // probabilities[x][e]: station x serves district e.
  std::vector<std::vector<double>> probabilities;
};

// f(S) = min{|S ∩ V|, k} + |S ∩ V*|, with V and V* partitioning {0..m-1}.
struct AdversarialSpec {
  std::vector<ElementId> v;
  std::vector<ElementId> v_star;
  std::size_t k = 2;
};

struct ModularSpec {
  std::vector<double> weights;
};

class WeightedCoverageFunction final : public SetFunction {
 public:
  explicit WeightedCoverageFunction(const WeightedCoverageSpec& spec);

  std::size_t ground_size() const override { return ground_size_; }
  std::string_view name() const override { return "weighted_coverage"; }
  double Evaluate(std::span<const ElementId> set) const override;

 private:
  std::size_t ground_size_;
  std::size_t words_;
  std::vector<double> weights_;         // dense universe index -> weight
  std::vector<std::uint64_t> masks_;    // ground_size_ rows of words_ words
};

// Rows of the miss matrix (1 − p) are stored contiguously so the evaluation
// loops run through the SIMD kernels. Size-1 and size-2 queries use the
// closed forms directly; larger sets pay one pass per member.
class ProbabilisticCoverageFunction final : public SetFunction {
 public:
  explicit ProbabilisticCoverageFunction(const ProbabilisticCoverageSpec& spec);

  std::size_t ground_size() const override { return ground_size_; }
  std::string_view name() const override { return "probabilistic_coverage"; }
  double Evaluate(std::span<const ElementId> set) const override;
  // Θ(|districts| · |S|).
  std::uint64_t QueryCost(std::size_t set_size) const override;

  std::size_t district_count() const { return demands_.size(); }

 private:
  const double* MissRow(ElementId x) const { return miss_.data() + x * demands_.size(); }

  std::size_t ground_size_;
  std::vector<double> demands_;
  std::vector<double> miss_;
};

class AdversarialFunction final : public SetFunction {
 public:
  explicit AdversarialFunction(const AdversarialSpec& spec);

  std::size_t ground_size() const override { return in_v_star_.size(); }
  std::string_view name() const override { return "adversarial"; }
  double Evaluate(std::span<const ElementId> set) const override;

 private:
  std::vector<char> in_v_star_;
  std::size_t k_;
};

class ModularFunction final : public SetFunction {
 public:
  explicit ModularFunction(const ModularSpec& spec);

  std::size_t ground_size() const override { return weights_.size(); }
  std::string_view name() const override { return "modular"; }
  double Evaluate(std::span<const ElementId> set) const override;

 private:
  std::vector<double> weights_;
};

// Arbitrary set function from a callable; used for fixtures that are not
// submodular, monotone or normalized.
class CallableSetFunction final : public SetFunction {
 public:
  using Fn = std::function<double(std::span<const ElementId>)>;
  CallableSetFunction(std::size_t ground_size, Fn fn, std::string name = "callable")
      : ground_size_(ground_size), fn_(std::move(fn)), name_(std::move(name)) {}

  std::size_t ground_size() const override { return ground_size_; }
  std::string_view name() const override { return name_; }
  double Evaluate(std::span<const ElementId> set) const override { return fn_(set); }

 private:
  std::size_t ground_size_;
  Fn fn_;
  std::string name_;
};

// Builders validate the spec (MalformedSpec) and return a full-budget oracle.
Oracle BuildWeightedCoverage(const WeightedCoverageSpec& spec);
Oracle BuildProbabilisticCoverage(const ProbabilisticCoverageSpec& spec);
Oracle BuildAdversarial(const AdversarialSpec& spec);
Oracle BuildModular(const ModularSpec& spec);

}  // namespace pairsub

#endif  // PAIRSUB_FUNCTIONS_HPP_
