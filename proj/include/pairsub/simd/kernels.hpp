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

#ifndef PAIRSUB_SIMD_KERNELS_HPP_
#define PAIRSUB_SIMD_KERNELS_HPP_

// Data-parallel inner loops. Every kernel has a scalar reference version and
// optional AVX2 / NEON versions; the active table is chosen once at runtime
// from CPU support (override with PAIRSUB_SIMD=scalar|avx2|neon).
//
// Elementwise kernels (multiply_into, min_update, redundancy_update,
// max_value) are bit-identical across variants. Reductions over demand
// vectors differ only in summation order.

#include <cstddef>
#include <string_view>

namespace pairsub::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view IsaName(Isa isa);

struct KernelTable {
  Isa isa;
  // Σ demand[e] * (1 - miss[e])
  double (*coverage_single)(const double* demand, const double* miss, std::size_t n);
  // Σ demand[e] * (1 - miss_a[e] * miss_b[e])
  double (*coverage_pair)(const double* demand, const double* miss_a,
                          const double* miss_b, std::size_t n);
  // acc[e] *= miss[e]
  void (*multiply_into)(double* acc, const double* miss, std::size_t n);
  // upper[i] = min(upper[i], candidate[i])
  void (*min_update)(double* upper, const double* candidate, std::size_t n);
  // lower[i] -= base[i] - marginal[i]
  void (*redundancy_update)(double* lower, const double* base,
                            const double* marginal, std::size_t n);
  // max over values; -inf for n == 0
  double (*max_value)(const double* values, std::size_t n);
};

const KernelTable& ScalarKernels();
// nullptr when the variant was not compiled in.
const KernelTable* Avx2Kernels();
const KernelTable* NeonKernels();

bool CpuSupports(Isa isa);

// Kernel table used by the library.
const KernelTable& ActiveKernels();

// Swaps the active table for the lifetime of the object. Intended for tests
// and benchmarks; not safe while other threads are evaluating.
class ScopedKernelOverride {
 public:
  explicit ScopedKernelOverride(const KernelTable& table);
  ~ScopedKernelOverride();
  ScopedKernelOverride(const ScopedKernelOverride&) = delete;
  ScopedKernelOverride& operator=(const ScopedKernelOverride&) = delete;

 private:
  const KernelTable* previous_;
};

}  // namespace pairsub::simd

#endif  // PAIRSUB_SIMD_KERNELS_HPP_
