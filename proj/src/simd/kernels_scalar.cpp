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

// Scalar reference kernels. These define the semantics the vector variants
// are tested against.

#include <algorithm>
#include <limits>

#include "kernel_variants.hpp"

namespace pairsub::simd::detail {
namespace {

double CoverageSingle(const double* demand, const double* miss, std::size_t n) {
  double sum = 0.0;
  for (std::size_t e = 0; e < n; ++e) sum += demand[e] * (1.0 - miss[e]);
  return sum;
}

double CoveragePair(const double* demand, const double* miss_a,
                    const double* miss_b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t e = 0; e < n; ++e) {
    sum += demand[e] * (1.0 - miss_a[e] * miss_b[e]);
  }
  return sum;
}

void MultiplyInto(double* acc, const double* miss, std::size_t n) {
  for (std::size_t e = 0; e < n; ++e) acc[e] *= miss[e];
}

void MinUpdate(double* upper, const double* candidate, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    upper[i] = candidate[i] < upper[i] ? candidate[i] : upper[i];
  }
}

void RedundancyUpdate(double* lower, const double* base, const double* marginal,
                      std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) lower[i] -= base[i] - marginal[i];
}

double MaxValue(const double* values, std::size_t n) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) best = values[i] > best ? values[i] : best;
  return best;
}

}  // namespace

const KernelTable kScalarTable = {
    Isa::kScalar, CoverageSingle, CoveragePair,  MultiplyInto,
    MinUpdate,    RedundancyUpdate, MaxValue,
};

}  // namespace pairsub::simd::detail
