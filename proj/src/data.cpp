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

#include "pairsub/data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "pairsub/error.hpp"

namespace pairsub {
namespace {

constexpr const char* kHeader = "district_id,x,y,demand";

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string Trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

[[noreturn]] void ParseFailure(std::size_t row, std::size_t column, const std::string& what) {
  throw Error(ErrorCode::kParseError, "row " + std::to_string(row) + ", column " +
                                          std::to_string(column) + ": " + what);
}

double ParseNumber(const std::string& text, std::size_t row, std::size_t column) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [end, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || end != last || !std::isfinite(value)) {
    ParseFailure(row, column, "expected a number, got '" + text + "'");
  }
  return value;
}

}  // namespace

std::vector<District> ParseDistricts(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) ParseFailure(1, 1, "missing header");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (Trim(line) != kHeader) {
    ParseFailure(1, 1, std::string("expected header '") + kHeader + "'");
  }
  std::vector<District> districts;
  std::unordered_set<std::string> seen;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    const std::vector<std::string> fields = SplitFields(line);
    if (fields.size() != 4) {
      ParseFailure(row, std::min<std::size_t>(fields.size() + 1, 5),
                   "expected 4 fields, got " + std::to_string(fields.size()));
    }
    District d;
    d.id = Trim(fields[0]);
    if (d.id.empty()) ParseFailure(row, 1, "empty district_id");
    d.x = ParseNumber(Trim(fields[1]), row, 2);
    d.y = ParseNumber(Trim(fields[2]), row, 3);
    d.demand = ParseNumber(Trim(fields[3]), row, 4);
    if (d.demand < 0.0) {
      throw Error(ErrorCode::kNegativeDemand,
                  "district '" + d.id + "' (row " + std::to_string(row) + ") has demand " +
                      Trim(fields[3]));
    }
    if (!seen.insert(d.id).second) {
      throw Error(ErrorCode::kDuplicateId,
                  "district_id '" + d.id + "' repeated at row " + std::to_string(row));
    }
    districts.push_back(std::move(d));
  }
  return districts;
}

std::vector<District> LoadDistricts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path.string());
  return ParseDistricts(in);
}

void WriteDistricts(std::ostream& out, std::span<const District> districts) {
  out << kHeader << '\n';
  // max_digits10 keeps the text round-trip exact.
  out << std::setprecision(17);
  for (const District& d : districts) {
    out << d.id << ',' << d.x << ',' << d.y << ',' << d.demand << '\n';
  }
}

double KernelProbability(double distance, const KernelConfig& config) {
  const double ratio = distance / config.range;
  return std::exp(-ratio * ratio);
}

ProbabilisticCoverageSpec BuildCoverageInstance(std::span<const District> districts,
                                                const KernelConfig& config) {
  if (districts.empty()) throw Error(ErrorCode::kEmptyInput, "no districts");
  if (!(config.range > 0.0) || !std::isfinite(config.range)) {
    throw Error(ErrorCode::kInvalidArgument, "kernel range r_s must be positive");
  }
  ProbabilisticCoverageSpec spec;
  spec.demands.reserve(districts.size());
  for (const District& d : districts) spec.demands.push_back(d.demand);
  spec.probabilities.resize(districts.size());
  for (std::size_t s = 0; s < districts.size(); ++s) {
    auto& row = spec.probabilities[s];
    row.reserve(districts.size());
    for (const District& e : districts) {
      const double distance = std::hypot(districts[s].x - e.x, districts[s].y - e.y);
      row.push_back(KernelProbability(distance, config));
    }
  }
  return spec;
}

std::vector<District> SyntheticDistricts(std::size_t m, std::uint64_t seed) {
  if (m == 0) throw Error(ErrorCode::kEmptyInput, "no districts requested");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Unit density: a square of side sqrt(m) so that r_s = 1 reaches a few
  // neighbours.
  const double side = std::sqrt(static_cast<double>(m));
  struct Hotspot {
    double x, y, peak, spread;
  };
  std::vector<Hotspot> hotspots(3);
  for (Hotspot& h : hotspots) {
    h = {side * unit(rng), side * unit(rng), 20.0 + 80.0 * unit(rng),
         side * (0.1 + 0.25 * unit(rng))};
  }
  std::vector<District> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    District& d = out[i];
    d.id = "d" + std::to_string(i);
    d.x = side * unit(rng);
    d.y = side * unit(rng);
    d.demand = 5.0 * unit(rng);
    for (const Hotspot& h : hotspots) {
      const double r = std::hypot(d.x - h.x, d.y - h.y) / h.spread;
      d.demand += h.peak * std::exp(-r * r);
    }
  }
  return out;
}

}  // namespace pairsub
