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

// NEON kernels for AArch64, where Advanced SIMD is part of the baseline ISA.

#include <arm_neon.h>

#include "kernel_variants.hpp"

namespace pairsub::simd::detail {
namespace {

constexpr std::size_t kLanes = 2;

double CoverageSingle(const double* demand, const double* miss, std::size_t n) {
  const float64x2_t one = vdupq_n_f64(1.0);
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t e = 0;
  for (; e + 2 * kLanes <= n; e += 2 * kLanes) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(demand + e), vsubq_f64(one, vld1q_f64(miss + e)));
    acc1 = vfmaq_f64(acc1, vld1q_f64(demand + e + kLanes),
                     vsubq_f64(one, vld1q_f64(miss + e + kLanes)));
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; e < n; ++e) sum += demand[e] * (1.0 - miss[e]);
  return sum;
}

double CoveragePair(const double* demand, const double* miss_a,
                    const double* miss_b, std::size_t n) {
  const float64x2_t one = vdupq_n_f64(1.0);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t e = 0;
  for (; e + kLanes <= n; e += kLanes) {
    const float64x2_t q = vmulq_f64(vld1q_f64(miss_a + e), vld1q_f64(miss_b + e));
    acc = vfmaq_f64(acc, vld1q_f64(demand + e), vsubq_f64(one, q));
  }
  double sum = vaddvq_f64(acc);
  for (; e < n; ++e) sum += demand[e] * (1.0 - miss_a[e] * miss_b[e]);
  return sum;
}

void MultiplyInto(double* acc, const double* miss, std::size_t n) {
  std::size_t e = 0;
  for (; e + kLanes <= n; e += kLanes) {
    vst1q_f64(acc + e, vmulq_f64(vld1q_f64(acc + e), vld1q_f64(miss + e)));
  }
  for (; e < n; ++e) acc[e] *= miss[e];
}

void MinUpdate(double* upper, const double* candidate, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float64x2_t c = vld1q_f64(candidate + i);
    const float64x2_t u = vld1q_f64(upper + i);
    vst1q_f64(upper + i, vbslq_f64(vcltq_f64(c, u), c, u));
  }
  for (; i < n; ++i) upper[i] = candidate[i] < upper[i] ? candidate[i] : upper[i];
}

void RedundancyUpdate(double* lower, const double* base, const double* marginal,
                      std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float64x2_t gap = vsubq_f64(vld1q_f64(base + i), vld1q_f64(marginal + i));
    vst1q_f64(lower + i, vsubq_f64(vld1q_f64(lower + i), gap));
  }
  for (; i < n; ++i) lower[i] -= base[i] - marginal[i];
}

double MaxValue(const double* values, std::size_t n) {
  const double neg_inf = -__builtin_inf();
  float64x2_t best = vdupq_n_f64(neg_inf);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) best = vmaxq_f64(vld1q_f64(values + i), best);
  double result = vmaxvq_f64(best);
  for (; i < n; ++i) result = values[i] > result ? values[i] : result;
  return result;
}

}  // namespace

const KernelTable kNeonTable = {
    Isa::kNeon, CoverageSingle, CoveragePair,  MultiplyInto,
    MinUpdate,  RedundancyUpdate, MaxValue,
};

}  // namespace pairsub::simd::detail
