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

#ifndef PAIRSUB_DATA_HPP_
#define PAIRSUB_DATA_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pairsub/functions.hpp"

namespace pairsub {

struct District {
  std::string id;
  double x = 0.0;
  double y = 0.0;
  double demand = 0.0;  // expected pickups per window

  friend bool operator==(const District&, const District&) = default;
};

struct KernelConfig {
  double range = 1.0;  // r_s, in coordinate units
};

// CSV with header `district_id,x,y,demand`. Errors: ParseError (with row and
// column), DuplicateId, NegativeDemand.
std::vector<District> LoadDistricts(const std::filesystem::path& path);
std::vector<District> ParseDistricts(std::istream& in);
void WriteDistricts(std::ostream& out, std::span<const District> districts);

// exp(−d² / r_s²).
double KernelProbability(double distance, const KernelConfig& config);

// One station at every district centroid, in input order; p[x][e] from the
// Gaussian kernel on Euclidean distance. Throws EmptyInput on no districts
// and InvalidArgument on a non-positive range.
ProbabilisticCoverageSpec BuildCoverageInstance(std::span<const District> districts,
                                                const KernelConfig& config);

// Seeded synthetic demand field: m districts on a square of unit density
// with a few Gaussian demand hotspots over a uniform floor.
std::vector<District> SyntheticDistricts(std::size_t m, std::uint64_t seed);

}  // namespace pairsub

#endif  // PAIRSUB_DATA_HPP_
