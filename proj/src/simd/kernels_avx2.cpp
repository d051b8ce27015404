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

// AVX2 + FMA kernels. This translation unit is compiled with -mavx2 -mfma and
// is only entered after a runtime CPU check, so it must not define inline
// functions shared with other translation units (no standard headers beyond
// the intrinsics).

#include <immintrin.h>

#include "kernel_variants.hpp"

namespace pairsub::simd::detail {
namespace {

constexpr std::size_t kLanes = 4;

double HorizontalSum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double CoverageSingle(const double* demand, const double* miss, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t e = 0;
  for (; e + 2 * kLanes <= n; e += 2 * kLanes) {
    const __m256d p0 = _mm256_sub_pd(one, _mm256_loadu_pd(miss + e));
    const __m256d p1 = _mm256_sub_pd(one, _mm256_loadu_pd(miss + e + kLanes));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(demand + e), p0, acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(demand + e + kLanes), p1, acc1);
  }
  for (; e + kLanes <= n; e += kLanes) {
    const __m256d p = _mm256_sub_pd(one, _mm256_loadu_pd(miss + e));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(demand + e), p, acc0);
  }
  double sum = HorizontalSum(_mm256_add_pd(acc0, acc1));
  for (; e < n; ++e) sum += demand[e] * (1.0 - miss[e]);
  return sum;
}

double CoveragePair(const double* demand, const double* miss_a,
                    const double* miss_b, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t e = 0;
  for (; e + 2 * kLanes <= n; e += 2 * kLanes) {
    const __m256d q0 =
        _mm256_mul_pd(_mm256_loadu_pd(miss_a + e), _mm256_loadu_pd(miss_b + e));
    const __m256d q1 = _mm256_mul_pd(_mm256_loadu_pd(miss_a + e + kLanes),
                                     _mm256_loadu_pd(miss_b + e + kLanes));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(demand + e), _mm256_sub_pd(one, q0), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(demand + e + kLanes),
                           _mm256_sub_pd(one, q1), acc1);
  }
  for (; e + kLanes <= n; e += kLanes) {
    const __m256d q =
        _mm256_mul_pd(_mm256_loadu_pd(miss_a + e), _mm256_loadu_pd(miss_b + e));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(demand + e), _mm256_sub_pd(one, q), acc0);
  }
  double sum = HorizontalSum(_mm256_add_pd(acc0, acc1));
  for (; e < n; ++e) sum += demand[e] * (1.0 - miss_a[e] * miss_b[e]);
  return sum;
}

void MultiplyInto(double* acc, const double* miss, std::size_t n) {
  std::size_t e = 0;
  for (; e + kLanes <= n; e += kLanes) {
    _mm256_storeu_pd(acc + e,
                     _mm256_mul_pd(_mm256_loadu_pd(acc + e), _mm256_loadu_pd(miss + e)));
  }
  for (; e < n; ++e) acc[e] *= miss[e];
}

void MinUpdate(double* upper, const double* candidate, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    // min_pd(a, b) = a < b ? a : b, matching the scalar select.
    _mm256_storeu_pd(upper + i, _mm256_min_pd(_mm256_loadu_pd(candidate + i),
                                              _mm256_loadu_pd(upper + i)));
  }
  for (; i < n; ++i) upper[i] = candidate[i] < upper[i] ? candidate[i] : upper[i];
}

void RedundancyUpdate(double* lower, const double* base, const double* marginal,
                      std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d gap =
        _mm256_sub_pd(_mm256_loadu_pd(base + i), _mm256_loadu_pd(marginal + i));
    _mm256_storeu_pd(lower + i, _mm256_sub_pd(_mm256_loadu_pd(lower + i), gap));
  }
  for (; i < n; ++i) lower[i] -= base[i] - marginal[i];
}

double MaxValue(const double* values, std::size_t n) {
  const double neg_inf = -__builtin_inf();
  __m256d best = _mm256_set1_pd(neg_inf);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    best = _mm256_max_pd(_mm256_loadu_pd(values + i), best);
  }
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, best);
  double result = neg_inf;
  for (double lane : lanes) result = lane > result ? lane : result;
  for (; i < n; ++i) result = values[i] > result ? values[i] : result;
  return result;
}

}  // namespace

const KernelTable kAvx2Table = {
    Isa::kAvx2, CoverageSingle, CoveragePair,  MultiplyInto,
    MinUpdate,  RedundancyUpdate, MaxValue,
};

}  // namespace pairsub::simd::detail
