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

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "pairsub/error.hpp"

namespace pairsub {
namespace {

using Mask = std::uint64_t;
using Set = std::vector<ElementId>;

std::vector<ElementId> MaskToSet(Mask mask) {
  std::vector<ElementId> out;
  for (ElementId x = 0; mask != 0; ++x, mask >>= 1) {
    if (mask & 1U) out.push_back(x);
  }
  return out;
}

Set Union(const Set& a, const Set& b) {
  Set out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Set Difference(const Set& a, const Set& b) {
  Set out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// lhs < rhs beyond the slack appropriate for values of magnitude `scale`.
bool Below(double lhs, double rhs, double scale) {
  const double slack = std::max(kAbsoluteTolerance, kRelativeTolerance * std::fabs(scale));
  return lhs < rhs - slack;
}

std::size_t DefaultLimit(Property property) {
  switch (property) {
    case Property::kMonotone:
      return 12;
    case Property::kMarginalLowerBound:
      return 10;
    default:
      return 8;
  }
}

// Decides exhaustive vs sampled. Exhaustive was explicitly requested on an
// instance above the limit: InstanceTooLarge.
bool UseExhaustive(Property property, const Oracle& oracle, const CheckOptions& options) {
  const std::size_t limit =
      std::min<std::size_t>(options.exhaustive_limit != 0 ? options.exhaustive_limit
                                                          : DefaultLimit(property),
                            20);
  const bool fits = oracle.ground_size() <= limit;
  switch (options.mode) {
    case CheckMode::kExhaustive:
      if (!fits) {
        throw Error(ErrorCode::kInstanceTooLarge,
                    std::string(PropertyName(property)) + ": exhaustive check limited to m <= " +
                        std::to_string(limit) + ", got m = " +
                        std::to_string(oracle.ground_size()));
      }
      return true;
    case CheckMode::kSampled:
      return false;
    case CheckMode::kAuto:
      return fits;
  }
  return fits;
}

// f on every subset of the ground set, indexed by bitmask.
struct SubsetTable {
  explicit SubsetTable(const Oracle& oracle) : m(oracle.ground_size()) {
    values.resize(Mask{1} << m);
    for (Mask mask = 0; mask < values.size(); ++mask) {
      values[mask] = oracle.Evaluate(MaskToSet(mask));
      scale = std::max(scale, std::fabs(values[mask]));
    }
  }
  double operator[](Mask mask) const { return values[mask]; }
  Mask full() const { return (Mask{1} << m) - 1; }

  std::size_t m;
  std::vector<double> values;
  double scale = 0.0;
};

// Ascending enumeration of the submasks of `mask`.
template <typename Visit>
void ForEachSubmask(Mask mask, Visit&& visit) {
  Mask sub = 0;
  while (true) {
    if (visit(sub)) return;
    if (sub == mask) return;
    sub = (sub - mask) & mask;
  }
}

VerificationReport Start(Property property, bool exhaustive) {
  VerificationReport report;
  report.property = property;
  report.exhaustive = exhaustive;
  return report;
}

void Fail(VerificationReport& report, std::vector<Set> witness, double lhs, double rhs) {
  report.holds = false;
  report.witness = std::move(witness);
  report.lhs = lhs;
  report.rhs = rhs;
}

// Random subsets for sampled mode. Each element independently lands in one of
// `parts` groups or in none.
class Sampler {
 public:
  Sampler(std::size_t m, std::uint64_t seed) : m_(m), rng_(seed) {}

  std::vector<Set> Draw(std::size_t parts) {
    std::vector<Set> groups(parts);
    std::uniform_int_distribution<std::size_t> pick(0, parts);
    for (std::size_t x = 0; x < m_; ++x) {
      const std::size_t g = pick(rng_);
      if (g < parts) groups[g].push_back(static_cast<ElementId>(x));
    }
    return groups;
  }

  bool Coin() { return std::bernoulli_distribution(0.5)(rng_); }

  ElementId Element() {
    return static_cast<ElementId>(std::uniform_int_distribution<std::size_t>(0, m_ - 1)(rng_));
  }

 private:
  std::size_t m_;
  std::mt19937_64 rng_;
};

double Eval(const Oracle& oracle, const Set& set) { return oracle.Evaluate(set); }

// Each property's inequality on explicit sets, used by sampled mode and by
// witness replay. Returns {lhs, rhs, scale}; violated when lhs < rhs.
struct Sides {
  double lhs;
  double rhs;
  double scale;
};

Sides MonotoneSides(const Oracle& o, const Set& a, const Set& b) {
  const double fa = Eval(o, a);
  const double fb = Eval(o, b);
  // Stated as f(B) >= f(A).
  return {fb, fa, std::max(std::fabs(fa), std::fabs(fb))};
}

Sides SubmodularSides(const Oracle& o, const Set& a, const Set& b, ElementId x) {
  const double fa = Eval(o, a);
  const double fax = Eval(o, Union(a, {x}));
  const double fb = Eval(o, b);
  const double fbx = Eval(o, Union(b, {x}));
  return {fax - fa, fbx - fb, std::max({std::fabs(fax), std::fabs(fbx)})};
}

Sides ConditioningSides(const Oracle& o, const Set& s, const Set& a, const Set& b,
                        const Set& c) {
  const Set ac = Union(a, c);
  const Set bc = Union(b, c);
  const double lhs = (Eval(o, Union(s, a)) - Eval(o, a)) - (Eval(o, Union(s, ac)) - Eval(o, ac));
  const double rhs = (Eval(o, Union(s, b)) - Eval(o, b)) - (Eval(o, Union(s, bc)) - Eval(o, bc));
  return {lhs, rhs, Eval(o, Union(Union(s, a), bc))};
}

Sides RedundancySides(const Oracle& o, const Set& a, const Set& b, const Set& c) {
  const Set bc = Union(b, c);
  const double redundancy =
      (Eval(o, Union(a, b)) - Eval(o, b)) - (Eval(o, Union(a, bc)) - Eval(o, bc));
  const double fa = Eval(o, a);
  double bound = 0.0;
  for (ElementId y : c) bound += Eval(o, {y}) - (Eval(o, Union(a, {y})) - fa);
  // Stated as Σ ... >= redundancy.
  return {bound, redundancy, Eval(o, Union(a, bc))};
}

Sides LowerBoundSides(const Oracle& o, ElementId x, const Set& s) {
  const double marginal = Marginal(o, x, s);
  const double lower = LowerEstimate(o, x, s);
  double scale = Eval(o, Union(s, {x}));
  for (ElementId y : s) scale = std::max(scale, Eval(o, {x, y}));
  return {marginal, lower, scale};
}

Sides NemhauserSides(const Oracle& o, const Set& s, const Set& t) {
  const double fs = Eval(o, s);
  double bound = fs;
  for (ElementId x : Difference(t, s)) bound += Eval(o, Union(s, {x})) - fs;
  const double ft = Eval(o, t);
  return {bound, ft, std::max(std::fabs(ft), std::fabs(bound))};
}

VerificationReport Sampled(Property property, const Oracle& oracle,
                           const CheckOptions& options) {
  VerificationReport report = Start(property, false);
  const std::size_t m = oracle.ground_size();
  Sampler sampler(m, options.seed);
  for (std::size_t draw = 0; draw < options.samples && report.holds; ++draw) {
    ++report.instances_checked;
    switch (property) {
      case Property::kMonotone: {
        const auto g = sampler.Draw(2);
        const Set b = Union(g[0], g[1]);
        const Sides s = MonotoneSides(oracle, g[0], b);
        if (Below(s.lhs, s.rhs, s.scale)) Fail(report, {g[0], b}, s.rhs, s.lhs);
        break;
      }
      case Property::kSubmodular: {
        const ElementId x = sampler.Element();
        auto g = sampler.Draw(2);
        for (Set& part : g) part.erase(std::remove(part.begin(), part.end(), x), part.end());
        const Set b = Union(g[0], g[1]);
        const Sides s = SubmodularSides(oracle, g[0], b, x);
        if (Below(s.lhs, s.rhs, s.scale)) Fail(report, {g[0], b, {x}}, s.lhs, s.rhs);
        break;
      }
      case Property::kSupermodularityOfConditioning: {
        // Groups: A, B∖A, C, S-only; S also picks up members of A, B, C.
        auto g = sampler.Draw(4);
        const Set a = g[0];
        const Set b = Union(g[0], g[1]);
        const Set c = g[2];
        Set s = g[3];
        if (!options.soc_disjoint) {
          for (const Set& part : {a, b, c}) {
            for (ElementId y : part) {
              if (sampler.Coin()) s.push_back(y);
            }
          }
          std::sort(s.begin(), s.end());
          s.erase(std::unique(s.begin(), s.end()), s.end());
        }
        const Sides sides = ConditioningSides(oracle, s, a, b, c);
        if (Below(sides.lhs, sides.rhs, sides.scale)) {
          Fail(report, {s, a, b, c}, sides.lhs, sides.rhs);
        }
        break;
      }
      case Property::kPairwiseRedundancyBound: {
        const auto g = sampler.Draw(3);
        const Sides s = RedundancySides(oracle, g[0], g[1], g[2]);
        if (Below(s.lhs, s.rhs, s.scale)) Fail(report, {g[0], g[1], g[2]}, s.rhs, s.lhs);
        break;
      }
      case Property::kMarginalLowerBound: {
        const ElementId x = sampler.Element();
        Set s = sampler.Draw(1)[0];
        s.erase(std::remove(s.begin(), s.end(), x), s.end());
        const Sides sides = LowerBoundSides(oracle, x, s);
        if (Below(sides.lhs, sides.rhs, sides.scale)) {
          Fail(report, {{x}, s}, sides.lhs, sides.rhs);
        }
        break;
      }
      case Property::kNemhauserInequality: {
        const auto g = sampler.Draw(3);
        const Set s = Union(g[0], g[1]);
        const Set t = Union(g[1], g[2]);
        const Sides sides = NemhauserSides(oracle, s, t);
        if (Below(sides.lhs, sides.rhs, sides.scale)) {
          Fail(report, {s, t}, sides.rhs, sides.lhs);
        }
        break;
      }
      case Property::kNormalized:
        return CheckNormalized(oracle);
    }
  }
  return report;
}

}  // namespace

std::string_view PropertyName(Property property) {
  switch (property) {
    case Property::kNormalized:
      return "normalized";
    case Property::kMonotone:
      return "monotone";
    case Property::kSubmodular:
      return "submodular";
    case Property::kSupermodularityOfConditioning:
      return "supermodularity_of_conditioning";
    case Property::kPairwiseRedundancyBound:
      return "pairwise_redundancy_bound";
    case Property::kMarginalLowerBound:
      return "marginal_lower_bound";
    case Property::kNemhauserInequality:
      return "nemhauser_inequality";
  }
  return "unknown";
}

std::vector<Property> AllProperties() {
  return {Property::kNormalized,
          Property::kMonotone,
          Property::kSubmodular,
          Property::kSupermodularityOfConditioning,
          Property::kPairwiseRedundancyBound,
          Property::kMarginalLowerBound,
          Property::kNemhauserInequality};
}

std::optional<Property> ParseProperty(std::string_view name) {
  for (Property p : AllProperties()) {
    if (PropertyName(p) == name) return p;
  }
  if (name == "soc") return Property::kSupermodularityOfConditioning;
  if (name == "nemhauser") return Property::kNemhauserInequality;
  return std::nullopt;
}

VerificationReport CheckNormalized(const Oracle& oracle) {
  VerificationReport report = Start(Property::kNormalized, true);
  const double empty = oracle.Evaluate(std::span<const ElementId>());
  report.instances_checked = 1;
  if (!ApproxZero(empty)) Fail(report, {Set{}}, empty, 0.0);
  return report;
}

VerificationReport CheckMonotone(const Oracle& oracle, const CheckOptions& options) {
  if (!UseExhaustive(Property::kMonotone, oracle, options)) {
    return Sampled(Property::kMonotone, oracle, options);
  }
  VerificationReport report = Start(Property::kMonotone, true);
  const SubsetTable f(oracle);
  for (Mask a = 0; a <= f.full() && report.holds; ++a) {
    for (std::size_t x = 0; x < f.m; ++x) {
      const Mask bit = Mask{1} << x;
      if (a & bit) continue;
      ++report.instances_checked;
      if (Below(f[a | bit], f[a], f.scale)) {
        Fail(report, {MaskToSet(a), MaskToSet(a | bit)}, f[a], f[a | bit]);
        break;
      }
    }
  }
  return report;
}

VerificationReport CheckSubmodular(const Oracle& oracle, const CheckOptions& options) {
  if (!UseExhaustive(Property::kSubmodular, oracle, options)) {
    return Sampled(Property::kSubmodular, oracle, options);
  }
  VerificationReport report = Start(Property::kSubmodular, true);
  const SubsetTable f(oracle);
  for (Mask b = 0; b <= f.full() && report.holds; ++b) {
    ForEachSubmask(b, [&](Mask a) {
      for (std::size_t x = 0; x < f.m; ++x) {
        const Mask bit = Mask{1} << x;
        if (b & bit) continue;
        ++report.instances_checked;
        const double gain_a = f[a | bit] - f[a];
        const double gain_b = f[b | bit] - f[b];
        if (Below(gain_a, gain_b, f.scale)) {
          Fail(report, {MaskToSet(a), MaskToSet(b), {static_cast<ElementId>(x)}}, gain_a,
               gain_b);
          return true;
        }
      }
      return false;
    });
  }
  return report;
}

VerificationReport CheckSupermodularityOfConditioning(const Oracle& oracle,
                                                      const CheckOptions& options) {
  if (!UseExhaustive(Property::kSupermodularityOfConditioning, oracle, options)) {
    return Sampled(Property::kSupermodularityOfConditioning, oracle, options);
  }
  VerificationReport report = Start(Property::kSupermodularityOfConditioning, true);
  const SubsetTable f(oracle);
  const Mask full = f.full();
  for (Mask s = 0; s <= full && report.holds; ++s) {
    for (Mask b = 0; b <= full && report.holds; ++b) {
      if (options.soc_disjoint && (s & b)) continue;
      const double gain_b = f[s | b] - f[b];
      ForEachSubmask(b, [&](Mask a) {
        const double gain_a = f[s | a] - f[a];
        bool stop = false;
        ForEachSubmask(full & ~b, [&](Mask c) {
          if (options.soc_disjoint && (s & c)) return false;
          ++report.instances_checked;
          const double lhs = gain_a - (f[s | a | c] - f[a | c]);
          const double rhs = gain_b - (f[s | b | c] - f[b | c]);
          if (Below(lhs, rhs, f.scale)) {
            Fail(report, {MaskToSet(s), MaskToSet(a), MaskToSet(b), MaskToSet(c)}, lhs, rhs);
            stop = true;
          }
          return stop;
        });
        return stop;
      });
    }
  }
  return report;
}

VerificationReport CheckPairwiseRedundancyBound(const Oracle& oracle,
                                                const CheckOptions& options) {
  if (!UseExhaustive(Property::kPairwiseRedundancyBound, oracle, options)) {
    return Sampled(Property::kPairwiseRedundancyBound, oracle, options);
  }
  VerificationReport report = Start(Property::kPairwiseRedundancyBound, true);
  const SubsetTable f(oracle);
  const Mask full = f.full();
  for (Mask a = 0; a <= full && report.holds; ++a) {
    ForEachSubmask(full & ~a, [&](Mask b) {
      bool stop = false;
      ForEachSubmask(full & ~(a | b), [&](Mask c) {
        ++report.instances_checked;
        const double redundancy = (f[a | b] - f[b]) - (f[a | b | c] - f[b | c]);
        double bound = 0.0;
        for (std::size_t y = 0; y < f.m; ++y) {
          const Mask bit = Mask{1} << y;
          if (c & bit) bound += f[bit] - (f[a | bit] - f[a]);
        }
        if (Below(bound, redundancy, f.scale)) {
          Fail(report, {MaskToSet(a), MaskToSet(b), MaskToSet(c)}, redundancy, bound);
          stop = true;
        }
        return stop;
      });
      return stop;
    });
  }
  return report;
}

VerificationReport CheckMarginalLowerBound(const Oracle& oracle, const CheckOptions& options) {
  if (!UseExhaustive(Property::kMarginalLowerBound, oracle, options)) {
    return Sampled(Property::kMarginalLowerBound, oracle, options);
  }
  VerificationReport report = Start(Property::kMarginalLowerBound, true);
  const SubsetTable f(oracle);
  for (Mask s = 0; s <= f.full() && report.holds; ++s) {
    for (std::size_t x = 0; x < f.m; ++x) {
      const Mask bit = Mask{1} << x;
      if (s & bit) continue;
      ++report.instances_checked;
      const double single = f[bit];
      double lower = single;
      for (std::size_t y = 0; y < f.m; ++y) {
        const Mask other = Mask{1} << y;
        if (s & other) lower -= single - (f[bit | other] - f[other]);
      }
      const double marginal = f[s | bit] - f[s];
      if (Below(marginal, lower, f.scale)) {
        Fail(report, {{static_cast<ElementId>(x)}, MaskToSet(s)}, marginal, lower);
        break;
      }
    }
  }
  return report;
}

VerificationReport CheckNemhauserInequality(const Oracle& oracle, const CheckOptions& options) {
  if (!UseExhaustive(Property::kNemhauserInequality, oracle, options)) {
    return Sampled(Property::kNemhauserInequality, oracle, options);
  }
  VerificationReport report = Start(Property::kNemhauserInequality, true);
  const SubsetTable f(oracle);
  const Mask full = f.full();
  for (Mask s = 0; s <= full && report.holds; ++s) {
    for (Mask t = 0; t <= full; ++t) {
      ++report.instances_checked;
      double bound = f[s];
      const Mask extra = t & ~s;
      for (std::size_t x = 0; x < f.m; ++x) {
        const Mask bit = Mask{1} << x;
        if (extra & bit) bound += f[s | bit] - f[s];
      }
      if (Below(bound, f[t], f.scale)) {
        Fail(report, {MaskToSet(s), MaskToSet(t)}, f[t], bound);
        break;
      }
    }
  }
  return report;
}

VerificationReport Check(Property property, const Oracle& oracle, const CheckOptions& options) {
  switch (property) {
    case Property::kNormalized:
      return CheckNormalized(oracle);
    case Property::kMonotone:
      return CheckMonotone(oracle, options);
    case Property::kSubmodular:
      return CheckSubmodular(oracle, options);
    case Property::kSupermodularityOfConditioning:
      return CheckSupermodularityOfConditioning(oracle, options);
    case Property::kPairwiseRedundancyBound:
      return CheckPairwiseRedundancyBound(oracle, options);
    case Property::kMarginalLowerBound:
      return CheckMarginalLowerBound(oracle, options);
    case Property::kNemhauserInequality:
      return CheckNemhauserInequality(oracle, options);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown property");
}

bool ReplayWitness(const Oracle& oracle, const VerificationReport& report) {
  if (report.holds || !report.witness) return false;
  const std::vector<Set>& w = *report.witness;
  auto violated = [](const Sides& s) { return Below(s.lhs, s.rhs, s.scale); };
  switch (report.property) {
    case Property::kNormalized:
      return !ApproxZero(oracle.Evaluate(std::span<const ElementId>()));
    case Property::kMonotone:
      return w.size() == 2 && violated(MonotoneSides(oracle, w[0], w[1]));
    case Property::kSubmodular:
      return w.size() == 3 && w[2].size() == 1 &&
             violated(SubmodularSides(oracle, w[0], w[1], w[2][0]));
    case Property::kSupermodularityOfConditioning:
      return w.size() == 4 && violated(ConditioningSides(oracle, w[0], w[1], w[2], w[3]));
    case Property::kPairwiseRedundancyBound:
      return w.size() == 3 && violated(RedundancySides(oracle, w[0], w[1], w[2]));
    case Property::kMarginalLowerBound:
      return w.size() == 2 && w[0].size() == 1 &&
             violated(LowerBoundSides(oracle, w[0][0], w[1]));
    case Property::kNemhauserInequality:
      return w.size() == 2 && violated(NemhauserSides(oracle, w[0], w[1]));
  }
  return false;
}

}  // namespace pairsub
