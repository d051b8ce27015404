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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kernel_variants.hpp"
#include "pairsub/simd/kernels.hpp"

namespace pairsub::simd {
namespace {

const KernelTable* Choose() {
  const char* forced = std::getenv("PAIRSUB_SIMD");
  if (forced != nullptr) {
    const std::string_view want(forced);
    if (want == "scalar") return &ScalarKernels();
    if (want == "avx2" && Avx2Kernels() != nullptr && CpuSupports(Isa::kAvx2)) {
      return Avx2Kernels();
    }
    if (want == "neon" && NeonKernels() != nullptr) return NeonKernels();
  }
  if (Avx2Kernels() != nullptr && CpuSupports(Isa::kAvx2)) return Avx2Kernels();
  if (NeonKernels() != nullptr && CpuSupports(Isa::kNeon)) return NeonKernels();
  return &ScalarKernels();
}

std::atomic<const KernelTable*>& Active() {
  static std::atomic<const KernelTable*> active{Choose()};
  return active;
}

}  // namespace

std::string_view IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

const KernelTable& ScalarKernels() { return detail::kScalarTable; }

const KernelTable* Avx2Kernels() {
#if defined(PAIRSUB_HAVE_AVX2)
  return &detail::kAvx2Table;
#else
  return nullptr;
#endif
}

const KernelTable* NeonKernels() {
#if defined(PAIRSUB_HAVE_NEON)
  return &detail::kNeonTable;
#else
  return nullptr;
#endif
}

bool CpuSupports(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& ActiveKernels() {
  return *Active().load(std::memory_order_acquire);
}

ScopedKernelOverride::ScopedKernelOverride(const KernelTable& table)
    : previous_(Active().exchange(&table, std::memory_order_acq_rel)) {}

ScopedKernelOverride::~ScopedKernelOverride() {
  Active().store(previous_, std::memory_order_release);
}

}  // namespace pairsub::simd
