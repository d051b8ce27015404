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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "pairsub/algorithms.hpp"
#include "pairsub/error.hpp"
#include "pairsub/functions.hpp"
#include "test_support.hpp"

namespace pairsub {
namespace {

using testing::FromMask;
using testing::Rng;

constexpr double kInf = std::numeric_limits<double>::infinity();

Oracle ChainCoverage() {
  WeightedCoverageSpec spec;
  for (const char* u : {"1", "2", "3", "4"}) spec.universe_weights[u] = 1.0;
  spec.covers = {{"1", "2"}, {"2", "3"}, {"3", "4"}};
  return BuildWeightedCoverage(spec);
}

// Three ground elements all covering the same unit-weight item.
Oracle Triplicate() { return BuildWeightedCoverage({{{"1", 1.0}}, {{"1"}, {"1"}, {"1"}}}); }

std::vector<double> Values(const std::vector<AlphaFactor>& alphas) {
  std::vector<double> out;
  for (const AlphaFactor& a : alphas) out.push_back(a.value());
  return out;
}

std::vector<AlphaFactor> Factors(std::initializer_list<double> values) {
  std::vector<AlphaFactor> out;
  for (double v : values) out.push_back(AlphaFactor::Finite(v));
  return out;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no pairsub::Error thrown";
  return ErrorCode::kInvalidArgument;
}

// Independent γ: 1 - exp(-(1/n) Σ 1/α).
double RefGamma(const std::vector<double>& alphas) {
  double sum = 0.0;
  for (double a : alphas) sum += std::isinf(a) ? 0.0 : 1.0 / a;
  return 1.0 - std::exp(-sum / static_cast<double>(alphas.size()));
}

TEST(AlphaFactor, Construction) {
  EXPECT_EQ(CodeOf([] { AlphaFactor::Finite(0.5); }), ErrorCode::kInvalidAlpha);
  EXPECT_EQ(CodeOf([] { AlphaFactor::Finite(NAN); }), ErrorCode::kInvalidAlpha);
  EXPECT_TRUE(AlphaFactor::Finite(kInf).is_infinite());
  EXPECT_EQ(AlphaFactor::Infinite().Reciprocal(), 0.0);
  EXPECT_EQ(AlphaFactor::Finite(4.0).Reciprocal(), 0.25);
}

TEST(BoundFromAlphas, Examples) {
  EXPECT_NEAR(BoundFromAlphas(Factors({1, 1, 1}), 3), 0.632121, 1e-6);
  const std::vector<AlphaFactor> vacuous{AlphaFactor::Infinite(), AlphaFactor::Infinite()};
  EXPECT_EQ(BoundFromAlphas(vacuous, 2), 0.0);
  EXPECT_NEAR(BoundFromAlphas(Factors({1, 2}), 2), 0.527633, 1e-6);
  EXPECT_EQ(CodeOf([] { BoundFromAlphas(Factors({1, 1}), 3); }), ErrorCode::kInvalidArgument);
}

TEST(BoundFromAlphas, RangeAndReference) {
  Rng rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = rng.Int(1, 30);
    std::vector<AlphaFactor> alphas;
    std::vector<double> raw;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = rng.Coin(0.2) ? kInf : 1.0 + rng.Real(0.0, 10.0);
      alphas.push_back(AlphaFactor::Finite(v));
      raw.push_back(v);
    }
    const double gamma = BoundFromAlphas(alphas, n);
    EXPECT_GE(gamma, 0.0);
    EXPECT_LE(gamma, 1.0 - std::exp(-1.0) + 1e-15);
    EXPECT_NEAR(gamma, RefGamma(raw), 1e-12);
  }
}

TEST(AlphasOptimistic, Examples) {
  const RunTrace trace = GreedyOptimistic(ChainCoverage(), 3);
  EXPECT_EQ(Values(AlphasOptimistic(trace, ChainCoverage())), (std::vector<double>{1, 1, kInf}));

  Rng rng(42);
  const Oracle modular = BuildModular(testing::RandomModular(rng, 8));
  for (double a : Values(AlphasOptimistic(GreedyOptimistic(modular, 6), modular))) {
    EXPECT_EQ(a, 1.0);
  }
  const RunTrace two = GreedyOptimistic(ChainCoverage(), 2);
  EXPECT_EQ(Values(AlphasOptimistic(two, ChainCoverage())), (std::vector<double>{1, 1}));
}

TEST(AlphasOptimistic, TraceMismatch) {
  const RunTrace trace = GreedyPessimistic(ChainCoverage(), 2);
  EXPECT_EQ(CodeOf([&] { AlphasOptimistic(trace, ChainCoverage()); }),
            ErrorCode::kTraceMismatch);
}

TEST(AlphasKWise, Examples) {
  Rng rng(43);
  const auto fixture = testing::RandomMonotoneFixture(rng, 9);
  const RunTrace k_equals_n = GreedyKWiseOptimistic(fixture.oracle, 4, 4);
  for (double a : Values(AlphasKWise(k_equals_n, fixture.oracle, 4))) EXPECT_EQ(a, 1.0);

  const RunTrace optimistic = GreedyOptimistic(ChainCoverage(), 3);
  EXPECT_EQ(Values(AlphasKWise(optimistic, ChainCoverage(), 2)),
            Values(AlphasOptimistic(optimistic, ChainCoverage())));

  const RunTrace three = GreedyKWiseOptimistic(ChainCoverage(), 3, 3);
  EXPECT_EQ(Values(AlphasKWise(three, ChainCoverage(), 3)), (std::vector<double>{1, 1, 1}));

  EXPECT_EQ(CodeOf([&] { AlphasKWise(optimistic, ChainCoverage(), 3); }),
            ErrorCode::kTraceMismatch);
  EXPECT_EQ(CodeOf([&] { AlphasKWise(GreedyFull(ChainCoverage(), 2), ChainCoverage(), 2); }),
            ErrorCode::kTraceMismatch);
}

TEST(AlphasPessimistic, Examples) {
  EXPECT_EQ(Values(AlphasPessimistic(0.0, 5)), (std::vector<double>{1, 1, 1, 1, 1}));
  EXPECT_EQ(Values(AlphasPessimistic(1.0, 4)), (std::vector<double>{1, 1, kInf, kInf}));
  EXPECT_EQ(Values(AlphasPessimistic(0.25, 4)), (std::vector<double>{1, 1, 2, 4}));
  EXPECT_EQ(CodeOf([] { AlphasPessimistic(1.5, 3); }), ErrorCode::kInvalidCurvature);
  EXPECT_EQ(CodeOf([] { AlphasPessimistic(-0.1, 3); }), ErrorCode::kInvalidCurvature);
}

TEST(AlphasPessimistic, SaturatedCurvatureGivesSmallGamma) {
  const double gamma = BoundFromAlphas(AlphasPessimistic(0.89, 25), 25);
  // Only the first two factors are finite: 1 - exp(-2/25).
  EXPECT_NEAR(gamma, 1.0 - std::exp(-2.0 / 25.0), 1e-12);
}

TEST(PostHocBound, Examples) {
  const Oracle disjoint = BuildWeightedCoverage(
      {{{"1", 1.0}, {"2", 1.0}, {"3", 1.0}}, {{"1", "2"}, {"3"}}});
  const std::vector<ElementId> solution{0, 1};
  const BoundReport report = PostHocBound(solution, disjoint);
  EXPECT_EQ(report.method, BoundMethod::kPostHocPairwise);
  EXPECT_EQ(Values(report.alphas), (std::vector<double>{1, 1}));
  EXPECT_NEAR(report.gamma, 0.632121, 1e-6);

  // Third pick of the triplicate has lower estimate 1 - 1 - 1 < 0.
  const std::vector<ElementId> copies{0, 1, 2};
  EXPECT_EQ(Values(PostHocBound(copies, Triplicate()).alphas),
            (std::vector<double>{1, 1, kInf}));

  Rng rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const auto fixture = testing::RandomMonotoneFixture(rng, rng.Int(1, 12));
    const std::vector<ElementId> best{GreedyUninformed(fixture.oracle, 1).selections[0].element};
    const BoundReport one = PostHocBound(best, fixture.oracle);
    EXPECT_EQ(Values(one.alphas), (std::vector<double>{1}));
    EXPECT_NEAR(one.gamma, 1.0 - std::exp(-1.0), 1e-12);
  }
}

TEST(PostHocBound, PairwiseOnlyAndValidated) {
  const Oracle pairwise = ChainCoverage().WithBudget(Budget::AtMost(2));
  const std::vector<ElementId> solution{0, 2, 1};
  EXPECT_NO_THROW(PostHocBound(solution, pairwise));
  const std::vector<ElementId> duplicate{0, 0};
  EXPECT_EQ(CodeOf([&] { PostHocBound(duplicate, pairwise); }), ErrorCode::kDuplicateElement);
  const std::vector<ElementId> too_long{0, 1, 2, 3};
  EXPECT_EQ(CodeOf([&] { PostHocBound(too_long, pairwise); }),
            ErrorCode::kCardinalityTooLarge);
  const std::vector<ElementId> unknown{7};
  EXPECT_EQ(CodeOf([&] { PostHocBound(unknown, pairwise); }), ErrorCode::kUnknownElement);
}

TEST(TraditionalCurvature, Examples) {
  EXPECT_EQ(TraditionalCurvature(BuildModular({{3, 1, 2}})), 0.0);
  EXPECT_DOUBLE_EQ(TraditionalCurvature(BuildAdversarial({{0, 1, 2}, {3, 4}, 2})), 1.0);
  EXPECT_EQ(TraditionalCurvature(BuildModular({{7}})), 0.0);
  Rng rng(45);
  EXPECT_EQ(CodeOf([&] { TraditionalCurvature(BuildModular(testing::RandomModular(rng, 30))); }),
            ErrorCode::kInstanceTooLarge);
}

TEST(KMarginalCurvature, Examples) {
  const std::vector<ElementId> s{0, 2};
  EXPECT_DOUBLE_EQ(KMarginalCurvature(ChainCoverage(), 1, s, 2), 1.0);
  EXPECT_EQ(KMarginalCurvature(BuildModular({{3, 1, 2}}), 1, s, 2), 0.0);
  EXPECT_EQ(KMarginalCurvature(ChainCoverage(), 1, {}, 3), 0.0);
}

TEST(KCardinalityCurvature, Examples) {
  const Oracle adversarial = BuildAdversarial({{0, 1, 2}, {3, 4}, 2});
  EXPECT_EQ(KCardinalityCurvature(adversarial.WithBudget(Budget::AtMost(2)), 2), 0.0);
  EXPECT_EQ(KCardinalityCurvature(BuildModular({{3, 1, 2}}), 2), 0.0);
  EXPECT_DOUBLE_EQ(
      KCardinalityCurvature(BuildWeightedCoverage({{{"1", 1.0}}, {{"1"}, {"1"}}}), 2), 1.0);
  EXPECT_EQ(CodeOf([] { KCardinalityCurvature(ChainCoverage().WithBudget(Budget::AtMost(2)), 3); }),
            ErrorCode::kBudgetExceeded);
}

TEST(KCardinalityCurvature, PairwiseQueryCount) {
  Rng rng(46);
  const auto fixture = testing::RandomMonotoneFixture(rng, 12);
  const Oracle counted = fixture.oracle.WithBudget(Budget::AtMost(2));
  KCardinalityCurvature(counted, 2);
  EXPECT_EQ(counted.counts().other, 0u);
  EXPECT_LE(counted.counts().size2, 12u * 11u / 2u);
}

// Independent τ_k by mask enumeration.
double RefTau(const Oracle& f, std::size_t k) {
  const std::size_t m = f.ground_size();
  double worst = 1.0;
  for (ElementId x = 0; x < m; ++x) {
    const double single = f.Evaluate({x});
    if (single <= 1e-12) continue;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      if (mask >> x & 1 || static_cast<std::size_t>(__builtin_popcountll(mask)) >= k) continue;
      worst = std::min(worst, testing::TrueMarginal(f, x, FromMask(mask)) / single);
    }
  }
  return 1.0 - worst;
}

double RefTraditional(const Oracle& f) { return RefTau(f, f.ground_size() + 1); }

TEST(Curvature, MatchesReferenceAndOrdering) {
  Rng rng(47);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t m = rng.Int(2, 8);
    const auto fixture = testing::RandomMonotoneFixture(rng, m);
    const double c = TraditionalCurvature(fixture.oracle);
    EXPECT_NEAR(c, RefTraditional(fixture.oracle), 1e-9);
    double previous_tau = 0.0;
    for (std::size_t k = 1; k <= 4; ++k) {
      const double tau = KCardinalityCurvature(fixture.oracle, k);
      EXPECT_NEAR(tau, RefTau(fixture.oracle, k), 1e-9) << "k=" << k;
      EXPECT_GE(c, tau - 1e-9);
      EXPECT_GE(tau, previous_tau - 1e-9);
      previous_tau = tau;
    }
    for (int draw = 0; draw < 10; ++draw) {
      const std::vector<ElementId> s = rng.Subset(m - 1, 0.5);
      const ElementId x = static_cast<ElementId>(m - 1);
      const double c2 = KMarginalCurvature(fixture.oracle, x, s, 2);
      EXPECT_GE(c2, 0.0);
      EXPECT_LE(c2, 1.0);
      EXPECT_GE(c, c2 - 1e-9);
      for (std::size_t k = 3; k <= 4; ++k) {
        EXPECT_GE(c2, KMarginalCurvature(fixture.oracle, x, s, k) - 1e-9);
      }
    }
  }
}

// α_i f(x_i|S_{i-1}) ≥ max_x f(x|S_{i-1}), with ∞ vacuous.
void ExpectSound(const Oracle& f, const RunTrace& trace, const std::vector<AlphaFactor>& alphas,
                 const std::string& label) {
  std::vector<ElementId> prefix;
  for (std::size_t i = 0; i < trace.selections.size(); ++i) {
    const ElementId xi = trace.selections[i].element;
    if (!alphas[i].is_infinite()) {
      double best = 0.0;
      for (ElementId x = 0; x < f.ground_size(); ++x) {
        if (std::find(prefix.begin(), prefix.end(), x) == prefix.end()) {
          best = std::max(best, testing::TrueMarginal(f, x, prefix));
        }
      }
      const double lhs = alphas[i].value() * testing::TrueMarginal(f, xi, prefix);
      EXPECT_GE(lhs, best - 1e-9 * (1 + best)) << label << " i=" << i + 1;
    }
    prefix.push_back(xi);
  }
}

TEST(Soundness, EveryAlphaProducer) {
  Rng rng(48);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = rng.Int(2, 12);
    const auto fixture = testing::RandomSocFixture(rng, m);
    const Oracle& f = fixture.oracle;
    const std::size_t n = rng.Int(1, std::min<std::size_t>(m, 6));

    const RunTrace optimistic = GreedyOptimistic(f, n);
    ExpectSound(f, optimistic, AlphasOptimistic(optimistic, f), "theorem2");
    const RunTrace kwise = GreedyKWiseOptimistic(f, n, 3);
    ExpectSound(f, kwise, AlphasKWise(kwise, f, 3), "theorem3");
    const RunTrace pessimistic = GreedyPessimistic(f, n);
    ExpectSound(f, pessimistic, AlphasPessimistic(KCardinalityCurvature(f, 2), n), "theorem5");
    for (Algorithm a : {Algorithm::kFull, Algorithm::kUninformed, Algorithm::kOptimistic,
                        Algorithm::kPessimistic}) {
      const RunTrace trace = RunAlgorithm(a, f, n);
      ExpectSound(f, trace, PostHocBound(trace.Sequence(), f).alphas, "algorithm1");
    }
  }
}

TEST(Certificates, HoldAgainstBruteForce) {
  Rng rng(49);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = rng.Int(2, 11);
    const auto fixture = testing::RandomSocFixture(rng, m);
    const Oracle& f = fixture.oracle;
    const std::size_t n = rng.Int(1, std::min<std::size_t>(m, 5));
    const double optimum = BruteForceOptimal(f, n).value;
    auto check = [&](const RunTrace& trace, double gamma) {
      EXPECT_GE(f.Evaluate(trace.final_set), gamma * optimum - 1e-9);
    };
    const RunTrace optimistic = GreedyOptimistic(f, n);
    check(optimistic, BoundFromAlphas(AlphasOptimistic(optimistic, f), n));
    check(optimistic, PostHocBound(optimistic.Sequence(), f).gamma);
    const RunTrace pessimistic = GreedyPessimistic(f, n);
    check(pessimistic, BoundFromAlphas(AlphasPessimistic(KCardinalityCurvature(f, 2), n), n));
    check(pessimistic, PostHocBound(pessimistic.Sequence(), f).gamma);
    const RunTrace kwise = GreedyKWiseOptimistic(f, n, 3);
    check(kwise, BoundFromAlphas(AlphasKWise(kwise, f, 3), n));
  }
}

TEST(Dominance, PostHocBeatsCurvatureClosedForm) {
  Rng rng(50);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = rng.Int(2, 16);
    const auto fixture = testing::RandomSocFixture(rng, m);
    const std::size_t n = rng.Int(1, m);
    const RunTrace trace = GreedyPessimistic(fixture.oracle, n);
    const double tau2 = KCardinalityCurvature(fixture.oracle, 2);
    const double closed_form = BoundFromAlphas(AlphasPessimistic(tau2, n), n);
    EXPECT_GE(PostHocBound(trace.Sequence(), fixture.oracle).gamma, closed_form - 1e-9);
  }
}

// On a shared trace the k-wise ratios never exceed the pairwise ones.
TEST(Dominance, KWiseExponentAtLeastPairwise) {
  Rng rng(51);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = rng.Int(3, 12);
    const auto fixture = testing::RandomMonotoneFixture(rng, m);
    const std::size_t n = rng.Int(1, std::min<std::size_t>(m, 6));
    const RunTrace trace = GreedyOptimistic(fixture.oracle, n);
    const auto pairwise = AlphasOptimistic(trace, fixture.oracle);
    std::vector<ElementId> prefix;
    for (std::size_t i = 0; i < n; ++i) {
      const ElementId x = trace.selections[i].element;
      const double c2 = KMarginalCurvature(fixture.oracle, x, prefix, 2);
      const double c3 = KMarginalCurvature(fixture.oracle, x, prefix, 3);
      EXPECT_LE(c3, c2 + 1e-9);
      if (i >= 2 && !pairwise[i].is_infinite()) {
        EXPECT_NEAR(pairwise[i].Reciprocal(), 1.0 - c2, 1e-9);
      }
      prefix.push_back(x);
    }
  }
}

TEST(BoundMethodNames, RoundTrip) {
  for (BoundMethod method :
       {BoundMethod::kOptimisticCurvature, BoundMethod::kKWiseCurvature,
        BoundMethod::kCardinalityCurvature, BoundMethod::kPostHocPairwise}) {
    EXPECT_EQ(ParseBoundMethod(BoundMethodName(method)), method);
  }
  EXPECT_EQ(BoundMethodName(BoundMethod::kPostHocPairwise), "algorithm1");
  EXPECT_FALSE(ParseBoundMethod("theorem9").has_value());
}

}  // namespace
}  // namespace pairsub
