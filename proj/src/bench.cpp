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

#include "pairsub/bench.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

#include "pairsub/error.hpp"

namespace pairsub {

TimingRecord TimeAlgorithm(Algorithm algorithm, const Oracle& oracle, std::size_t n,
                           std::size_t trials, std::size_t k) {
  if (trials == 0) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  TimingRecord record;
  record.algorithm = std::string(AlgorithmName(algorithm));
  record.m = oracle.ground_size();
  record.n = n;
  record.trials = trials;
  record.queries = RunAlgorithm(algorithm, oracle, n, k).query_counts;  // warm-up

  using Clock = std::chrono::steady_clock;
  double total = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto start = Clock::now();
    const RunTrace trace = RunAlgorithm(algorithm, oracle, n, k);
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    total += seconds;
    record.min_seconds = t == 0 ? seconds : std::min(record.min_seconds, seconds);
    record.max_seconds = t == 0 ? seconds : std::max(record.max_seconds, seconds);
  }
  record.mean_seconds = std::clamp(total / static_cast<double>(trials), record.min_seconds,
                                   record.max_seconds);
  return record;
}

std::vector<TimingRecord> ScalingSweep(std::span<const Algorithm> algorithms,
                                       const Oracle& oracle,
                                       std::span<const std::size_t> n_values,
                                       std::size_t trials, std::size_t k) {
  if (!std::is_sorted(n_values.begin(), n_values.end())) {
    throw Error(ErrorCode::kInvalidArgument, "n values must be ascending");
  }
  std::vector<TimingRecord> records;
  for (Algorithm algorithm : algorithms) {
    for (std::size_t n : n_values) {
      records.push_back(TimeAlgorithm(algorithm, oracle, n, trials, k));
    }
  }
  return records;
}

std::vector<std::pair<std::size_t, double>> SpeedupRatios(
    std::span<const TimingRecord> full, std::span<const TimingRecord> pairwise) {
  if (full.size() != pairwise.size()) {
    throw Error(ErrorCode::kGridMismatch, "record counts differ");
  }
  std::vector<std::pair<std::size_t, double>> ratios;
  for (std::size_t i = 0; i < full.size(); ++i) {
    if (full[i].n != pairwise[i].n) {
      throw Error(ErrorCode::kGridMismatch, "n = " + std::to_string(full[i].n) +
                                                " paired with n = " +
                                                std::to_string(pairwise[i].n));
    }
    ratios.emplace_back(full[i].n, full[i].mean_seconds / pairwise[i].mean_seconds);
  }
  return ratios;
}

void WriteTimingCsv(std::ostream& out, std::span<const TimingRecord> records) {
  out << "algorithm,m,n,trials,mean_s,min_s,max_s,q1,q2,qother\n";
  for (const TimingRecord& r : records) {
    out << r.algorithm << ',' << r.m << ',' << r.n << ',' << r.trials << ','
        << r.mean_seconds << ',' << r.min_seconds << ',' << r.max_seconds << ','
        << r.queries.size1 << ',' << r.queries.size2 << ',' << r.queries.other << '\n';
  }
}

void WriteRatioCsv(std::ostream& out, const std::string& algorithm,
                   std::span<const std::pair<std::size_t, double>> ratios, bool header) {
  if (header) out << "algorithm,n,ratio\n";
  for (const auto& [n, ratio] : ratios) out << algorithm << ',' << n << ',' << ratio << '\n';
}

}  // namespace pairsub
