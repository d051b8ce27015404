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

#ifndef PAIRSUB_SRC_COMBINATIONS_HPP_
#define PAIRSUB_SRC_COMBINATIONS_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace pairsub::internal {

// Calls visit(indices) for every r-subset of {0..n-1}, indices ascending, in
// lexicographic order. r == 0 visits the empty subset once.
template <typename Visit>
void ForEachCombination(std::size_t n, std::size_t r, Visit&& visit) {
  if (r > n) return;
  std::vector<std::size_t> pick(r);
  for (std::size_t i = 0; i < r; ++i) pick[i] = i;
  while (true) {
    visit(std::span<const std::size_t>(pick));
    std::size_t pos = r;
    while (pos > 0 && pick[pos - 1] == n - r + pos - 1) --pos;
    if (pos == 0) return;
    ++pick[pos - 1];
    for (std::size_t i = pos; i < r; ++i) pick[i] = pick[i - 1] + 1;
  }
}

}  // namespace pairsub::internal

#endif  // PAIRSUB_SRC_COMBINATIONS_HPP_
