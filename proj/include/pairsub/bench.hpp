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

#ifndef PAIRSUB_BENCH_HPP_
#define PAIRSUB_BENCH_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pairsub/algorithms.hpp"
#include "pairsub/core.hpp"

namespace pairsub {

struct TimingRecord {
  std::string algorithm;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t trials = 0;
  double mean_seconds = 0.0;
  double min_seconds = 0.0;
  double max_seconds = 0.0;
  QueryCounts queries;  // from a single run
};

// One untimed warm-up run, then `trials` timed runs executed sequentially.
TimingRecord TimeAlgorithm(Algorithm algorithm, const Oracle& oracle, std::size_t n,
                           std::size_t trials, std::size_t k = 2);

// One record per (algorithm, n), algorithm-major. n_values must ascend.
std::vector<TimingRecord> ScalingSweep(std::span<const Algorithm> algorithms,
                                       const Oracle& oracle,
                                       std::span<const std::size_t> n_values,
                                       std::size_t trials, std::size_t k = 2);

// full.mean / pairwise.mean per n. Throws GridMismatch unless both lists
// cover the same n values in the same order.
std::vector<std::pair<std::size_t, double>> SpeedupRatios(
    std::span<const TimingRecord> full, std::span<const TimingRecord> pairwise);

// `algorithm,m,n,trials,mean_s,min_s,max_s,q1,q2,qother`
void WriteTimingCsv(std::ostream& out, std::span<const TimingRecord> records);
// `algorithm,n,ratio`
void WriteRatioCsv(std::ostream& out, const std::string& algorithm,
                   std::span<const std::pair<std::size_t, double>> ratios,
                   bool header = true);

}  // namespace pairsub

#endif  // PAIRSUB_BENCH_HPP_
