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

#include "pairsub/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "pairsub/error.hpp"
#include "pairsub/functions.hpp"
#include "test_support.hpp"

namespace pairsub {
namespace {

using testing::FromCallable;
using testing::Rng;
using Sets = std::vector<std::vector<ElementId>>;

Oracle ChainCoverage() {
  WeightedCoverageSpec spec;
  for (const char* u : {"1", "2", "3", "4"}) spec.universe_weights[u] = 1.0;
  spec.covers = {{"1", "2"}, {"2", "3"}, {"3", "4"}};
  return BuildWeightedCoverage(spec);
}

Oracle Squared(std::size_t m) {
  return FromCallable(m, [](std::span<const ElementId> s) {
    return static_cast<double>(s.size() * s.size());
  });
}

// a,b,c = 0,1,2 in V; d = 3 in V*.
Oracle Adversarial() { return BuildAdversarial({{0, 1, 2}, {3}, 2}); }

TEST(Normalized, Examples) {
  EXPECT_TRUE(CheckNormalized(ChainCoverage()).holds);
  EXPECT_TRUE(CheckNormalized(BuildModular({{3, 1, 2}})).holds);
  const Oracle shifted = FromCallable(3, [](std::span<const ElementId> s) {
    return static_cast<double>(s.size()) + 1.0;
  });
  const VerificationReport report = CheckNormalized(shifted);
  EXPECT_FALSE(report.holds);
  EXPECT_EQ(report.witness, (Sets{{}}));
  EXPECT_TRUE(ReplayWitness(shifted, report));
}

TEST(Monotone, Examples) {
  EXPECT_TRUE(CheckMonotone(ChainCoverage()).holds);
  EXPECT_TRUE(CheckMonotone(Adversarial()).holds);
  const Oracle decreasing = FromCallable(3, [](std::span<const ElementId> s) {
    return -static_cast<double>(s.size());
  });
  const VerificationReport report = CheckMonotone(decreasing);
  EXPECT_FALSE(report.holds);
  EXPECT_EQ(report.witness, (Sets{{}, {0}}));
  EXPECT_TRUE(ReplayWitness(decreasing, report));
}

TEST(Submodular, Examples) {
  EXPECT_TRUE(CheckSubmodular(ChainCoverage()).holds);
  EXPECT_TRUE(CheckSubmodular(Adversarial()).holds);
  const VerificationReport report = CheckSubmodular(Squared(3));
  EXPECT_FALSE(report.holds);
  ASSERT_TRUE(report.witness.has_value());
  EXPECT_TRUE(ReplayWitness(Squared(3), report));
  // First violation in scan order: f(1|∅) = 1 < f(1|{0}) = 3.
  EXPECT_EQ(report.witness, (Sets{{}, {0}, {1}}));
  EXPECT_EQ(report.lhs, 1.0);
  EXPECT_EQ(report.rhs, 3.0);
}

TEST(Conditioning, Examples) {
  Rng rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    EXPECT_TRUE(CheckSupermodularityOfConditioning(
                    BuildWeightedCoverage(testing::RandomWeightedCoverage(rng, 6, 12)))
                    .holds);
    EXPECT_TRUE(CheckSupermodularityOfConditioning(
                    BuildProbabilisticCoverage(testing::RandomProbabilisticCoverage(rng, 6, 8)))
                    .holds);
  }
  const VerificationReport report = CheckSupermodularityOfConditioning(Adversarial());
  EXPECT_FALSE(report.holds);
  EXPECT_EQ(report.witness, (Sets{{0}, {}, {1}, {2}}));
  EXPECT_EQ(report.lhs, 0.0);
  EXPECT_EQ(report.rhs, 1.0);
  EXPECT_TRUE(ReplayWitness(Adversarial(), report));
}

TEST(Conditioning, DisjointModeStillCatchesAdversarial) {
  CheckOptions options;
  options.soc_disjoint = true;
  const VerificationReport report = CheckSupermodularityOfConditioning(Adversarial(), options);
  EXPECT_FALSE(report.holds);
  EXPECT_TRUE(ReplayWitness(Adversarial(), report));
  const VerificationReport full = CheckSupermodularityOfConditioning(ChainCoverage());
  EXPECT_LT(CheckSupermodularityOfConditioning(ChainCoverage(), options).instances_checked,
            full.instances_checked);
}

TEST(RedundancyBound, Examples) {
  Rng rng(62);
  EXPECT_TRUE(CheckPairwiseRedundancyBound(
                  BuildWeightedCoverage(testing::RandomWeightedCoverage(rng, 6, 12)))
                  .holds);
  const VerificationReport report = CheckPairwiseRedundancyBound(Adversarial());
  if (!report.holds) EXPECT_TRUE(ReplayWitness(Adversarial(), report));
}

TEST(MarginalLowerBound, Examples) {
  Rng rng(63);
  EXPECT_TRUE(CheckMarginalLowerBound(
                  BuildProbabilisticCoverage(testing::RandomProbabilisticCoverage(rng, 8, 10)))
                  .holds);
  EXPECT_TRUE(CheckMarginalLowerBound(BuildModular({{3, 1, 2, 5}})).holds);
  const VerificationReport report = CheckMarginalLowerBound(Adversarial());
  if (!report.holds) EXPECT_TRUE(ReplayWitness(Adversarial(), report));
}

TEST(MarginalLowerBound, AdversarialWithLargerKViolates) {
  // k = 3 over four V elements: f(x|{a,b,c}) = 0 but each pair looks modular.
  const Oracle oracle = BuildAdversarial({{0, 1, 2, 3}, {}, 3});
  const VerificationReport report = CheckMarginalLowerBound(oracle);
  EXPECT_FALSE(report.holds);
  EXPECT_TRUE(ReplayWitness(oracle, report));
}

TEST(Nemhauser, Examples) {
  EXPECT_TRUE(CheckNemhauserInequality(ChainCoverage()).holds);
  const VerificationReport report = CheckNemhauserInequality(Squared(3));
  EXPECT_FALSE(report.holds);
  EXPECT_TRUE(ReplayWitness(Squared(3), report));
}

// A random monotone set function from a random increasing table. About half
// of them are submodular when built from a concave profile.
Oracle RandomMonotoneTable(Rng& rng, std::size_t m, bool concave) {
  std::vector<double> by_size(m + 1, 0.0);
  double step = 10.0;
  for (std::size_t i = 1; i <= m; ++i) {
    step = concave ? step * rng.Real(0.3, 1.0) : rng.Real(0.0, 10.0);
    by_size[i] = by_size[i - 1] + step;
  }
  std::vector<double> weights(m);
  for (double& w : weights) w = rng.Real(0.0, 1.0);
  return FromCallable(m, [by_size, weights](std::span<const ElementId> s) {
    double w = 0.0;
    for (ElementId x : s) w += weights[x];
    return by_size[s.size()] + w;
  });
}

TEST(Consistency, SubmodularIffNemhauser) {
  Rng rng(64);
  int disagreements = 0;
  int non_submodular = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = rng.Int(1, 7);
    const Oracle oracle = trial % 3 == 0 ? testing::RandomMonotoneFixture(rng, m).oracle
                                         : RandomMonotoneTable(rng, m, rng.Coin());
    ASSERT_TRUE(CheckMonotone(oracle).holds);
    const bool submodular = CheckSubmodular(oracle).holds;
    const bool nemhauser = CheckNemhauserInequality(oracle).holds;
    disagreements += submodular != nemhauser;
    non_submodular += !submodular;
  }
  EXPECT_EQ(disagreements, 0);
  EXPECT_GT(non_submodular, 5);
}

TEST(Witnesses, AlwaysReplay) {
  Rng rng(65);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = rng.Int(2, 6);
    const Oracle oracle = RandomMonotoneTable(rng, m, false);
    for (Property property : AllProperties()) {
      const VerificationReport report = Check(property, oracle);
      if (!report.holds) {
        EXPECT_TRUE(report.witness.has_value());
        EXPECT_TRUE(ReplayWitness(oracle, report)) << PropertyName(property);
      }
    }
  }
}

TEST(Sampled, DeterministicAndCatchesViolations) {
  CheckOptions options;
  options.mode = CheckMode::kSampled;
  options.seed = 99;
  options.samples = 2000;
  const Oracle squared = Squared(14);
  const VerificationReport first = CheckSubmodular(squared, options);
  const VerificationReport second = CheckSubmodular(squared, options);
  EXPECT_FALSE(first.exhaustive);
  EXPECT_FALSE(first.holds);
  EXPECT_EQ(first.witness, second.witness);
  EXPECT_EQ(first.instances_checked, second.instances_checked);
  EXPECT_TRUE(ReplayWitness(squared, first));

  Rng rng(66);
  const Oracle coverage = BuildWeightedCoverage(testing::RandomWeightedCoverage(rng, 16, 30));
  for (Property property : AllProperties()) {
    const VerificationReport report = Check(property, coverage, options);
    EXPECT_TRUE(report.holds) << PropertyName(property);
    EXPECT_GT(report.instances_checked, 0u);
  }
}

TEST(Modes, AutoFallsBackAndExhaustiveRefuses) {
  Rng rng(67);
  const Oracle big = BuildModular(testing::RandomModular(rng, 10));
  EXPECT_FALSE(CheckSubmodular(big).exhaustive);
  EXPECT_TRUE(CheckMonotone(big).exhaustive);
  CheckOptions exhaustive;
  exhaustive.mode = CheckMode::kExhaustive;
  try {
    CheckSubmodular(big, exhaustive);
    ADD_FAILURE() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInstanceTooLarge);
  }
  exhaustive.exhaustive_limit = 10;
  EXPECT_TRUE(CheckSubmodular(big, exhaustive).exhaustive);
}

TEST(PropertyNames, RoundTrip) {
  for (Property property : AllProperties()) {
    EXPECT_EQ(ParseProperty(PropertyName(property)), property);
  }
  EXPECT_EQ(ParseProperty("soc"), Property::kSupermodularityOfConditioning);
  EXPECT_EQ(ParseProperty("nemhauser"), Property::kNemhauserInequality);
  EXPECT_FALSE(ParseProperty("convex").has_value());
  EXPECT_EQ(AllProperties().size(), 7u);
}

}  // namespace
}  // namespace pairsub
