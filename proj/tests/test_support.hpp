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

#ifndef PAIRSUB_TESTS_TEST_SUPPORT_HPP_
#define PAIRSUB_TESTS_TEST_SUPPORT_HPP_

// Seeded instance generators and reference evaluators shared by the tests.
// The reference evaluators recompute f from the spec with plain containers
// and never touch the library's function classes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pairsub/core.hpp"
#include "pairsub/functions.hpp"

namespace pairsub::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [lo, hi).
  double Real(double lo, double hi) {
    return lo + (hi - lo) * std::generate_canonical<double, 53>(engine_);
  }
  // Uniform in [lo, hi].
  std::size_t Int(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
  }
  bool Coin(double p = 0.5) { return Real(0.0, 1.0) < p; }

  std::vector<ElementId> Subset(std::size_t m, double p) {
    std::vector<ElementId> out;
    for (std::size_t x = 0; x < m; ++x) {
      if (Coin(p)) out.push_back(static_cast<ElementId>(x));
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

inline WeightedCoverageSpec RandomWeightedCoverage(Rng& rng, std::size_t m,
                                                   std::size_t universe) {
  WeightedCoverageSpec spec;
  for (std::size_t u = 0; u < universe; ++u) {
    spec.universe_weights["u" + std::to_string(u)] = rng.Coin(0.1) ? 0.0 : rng.Real(0.1, 5.0);
  }
  spec.covers.resize(m);
  for (auto& cover : spec.covers) {
    for (std::size_t u = 0; u < universe; ++u) {
      if (rng.Coin(0.3)) cover.push_back("u" + std::to_string(u));
    }
  }
  return spec;
}

inline ProbabilisticCoverageSpec RandomProbabilisticCoverage(Rng& rng, std::size_t m,
                                                             std::size_t districts) {
  ProbabilisticCoverageSpec spec;
  for (std::size_t e = 0; e < districts; ++e) spec.demands.push_back(rng.Real(0.0, 10.0));
  spec.probabilities.assign(m, std::vector<double>(districts, 0.0));
  for (auto& row : spec.probabilities) {
    for (double& p : row) p = rng.Coin(0.4) ? rng.Real(0.0, 1.0) : 0.0;
  }
  return spec;
}

inline ModularSpec RandomModular(Rng& rng, std::size_t m) {
  ModularSpec spec;
  for (std::size_t x = 0; x < m; ++x) spec.weights.push_back(rng.Real(0.0, 10.0));
  return spec;
}

// ---- reference evaluators

inline double RefWeightedCoverage(const WeightedCoverageSpec& spec,
                                  const std::vector<ElementId>& set) {
  std::set<std::string> covered;
  for (ElementId x : set) covered.insert(spec.covers[x].begin(), spec.covers[x].end());
  double total = 0.0;
  for (const std::string& u : covered) total += spec.universe_weights.at(u);
  return total;
}

inline double RefProbabilisticCoverage(const ProbabilisticCoverageSpec& spec,
                                       const std::vector<ElementId>& set) {
  double total = 0.0;
  for (std::size_t e = 0; e < spec.demands.size(); ++e) {
    double miss = 1.0;
    for (ElementId x : set) miss *= 1.0 - spec.probabilities[x][e];
    total += (1.0 - miss) * spec.demands[e];
  }
  return total;
}

inline double RefAdversarial(const AdversarialSpec& spec, const std::vector<ElementId>& set) {
  std::size_t in_v = 0;
  std::size_t in_star = 0;
  for (ElementId x : set) {
    if (std::find(spec.v.begin(), spec.v.end(), x) != spec.v.end()) ++in_v;
    if (std::find(spec.v_star.begin(), spec.v_star.end(), x) != spec.v_star.end()) ++in_star;
  }
  return static_cast<double>(std::min(in_v, spec.k) + in_star);
}

// A random monotone instance of one of the three families, as an oracle.
struct Fixture {
  std::string family;
  Oracle oracle;
};

inline Fixture RandomMonotoneFixture(Rng& rng, std::size_t m) {
  switch (rng.Int(0, 2)) {
    case 0:
      return {"weighted_coverage", BuildWeightedCoverage(RandomWeightedCoverage(rng, m, 3 * m))};
    case 1:
      return {"probabilistic_coverage",
              BuildProbabilisticCoverage(RandomProbabilisticCoverage(rng, m, 2 * m))};
    default:
      return {"modular", BuildModular(RandomModular(rng, m))};
  }
}

// Random fixture from the two coverage families, which satisfy the
// conditioning property.
inline Fixture RandomSocFixture(Rng& rng, std::size_t m) {
  if (rng.Coin()) {
    return {"weighted_coverage", BuildWeightedCoverage(RandomWeightedCoverage(rng, m, 3 * m))};
  }
  return {"probabilistic_coverage",
          BuildProbabilisticCoverage(RandomProbabilisticCoverage(rng, m, 2 * m))};
}

inline Oracle FromCallable(std::size_t m, CallableSetFunction::Fn fn) {
  return Oracle(std::make_shared<CallableSetFunction>(m, std::move(fn)));
}

// ---- small exhaustive helpers

inline std::vector<ElementId> FromMask(std::uint64_t mask) {
  std::vector<ElementId> out;
  for (ElementId x = 0; mask != 0; ++x, mask >>= 1) {
    if (mask & 1) out.push_back(x);
  }
  return out;
}

inline double Value(const Oracle& oracle, const std::vector<ElementId>& set) {
  return oracle.Evaluate(std::span<const ElementId>(set));
}

inline double TrueMarginal(const Oracle& oracle, ElementId x, std::vector<ElementId> set) {
  const double base = Value(oracle, set);
  set.push_back(x);
  return Value(oracle, set) - base;
}

inline double Tol(double scale) { return std::max(1e-12, 1e-9 * std::fabs(scale)); }

// Lowest id among values within tolerance of the maximum; -inf entries are
// never chosen.
inline ElementId RefArgmax(const std::vector<double>& values) {
  double best = -INFINITY;
  for (double v : values) best = std::max(best, v);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != -INFINITY && values[i] >= best - Tol(best)) return static_cast<ElementId>(i);
  }
  return 0;
}

}  // namespace pairsub::testing

#endif  // PAIRSUB_TESTS_TEST_SUPPORT_HPP_
