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

#include "pairsub/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "pairsub/error.hpp"

namespace pairsub {
namespace {

using nlohmann::json;

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedSpec, what);
}

const json& Field(const json& object, const char* name) {
  if (!object.is_object() || !object.contains(name)) {
    Malformed(std::string("missing field '") + name + "'");
  }
  return object.at(name);
}

std::string UniverseName(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  Malformed("universe elements must be strings or integers");
}

std::vector<ElementId> Ids(const json& array, const char* name) {
  if (!array.is_array()) Malformed(std::string("'") + name + "' must be an array");
  std::vector<ElementId> ids;
  for (const json& v : array) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      Malformed(std::string("'") + name + "' must hold non-negative integer ids");
    }
    ids.push_back(static_cast<ElementId>(v.get<long long>()));
  }
  return ids;
}

std::vector<double> Numbers(const json& array, const std::string& name) {
  if (!array.is_array()) Malformed("'" + name + "' must be an array of numbers");
  std::vector<double> out;
  for (const json& v : array) {
    if (!v.is_number()) Malformed("'" + name + "' must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

WeightedCoverageSpec ParseWeightedCoverage(const json& params) {
  WeightedCoverageSpec spec;
  const json& weights = Field(params, "universe_weights");
  if (!weights.is_object()) Malformed("'universe_weights' must be an object");
  for (const auto& [name, weight] : weights.items()) {
    if (!weight.is_number()) Malformed("weight of '" + name + "' must be a number");
    spec.universe_weights[name] = weight.get<double>();
  }
  const json& covers = Field(params, "covers");
  auto parse_cover = [](const json& list) {
    if (!list.is_array()) Malformed("each cover must be an array");
    std::vector<std::string> cover;
    for (const json& u : list) cover.push_back(UniverseName(u));
    return cover;
  };
  if (covers.is_array()) {
    for (const json& list : covers) spec.covers.push_back(parse_cover(list));
  } else if (covers.is_object()) {
    spec.covers.resize(covers.size());
    std::vector<char> seen(covers.size(), 0);
    for (const auto& [key, list] : covers.items()) {
      std::size_t id = 0;
      try {
        std::size_t used = 0;
        id = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        Malformed("cover key '" + key + "' is not an element id");
      }
      if (id >= covers.size() || seen[id] != 0) {
        Malformed("cover keys must be the ids 0..m-1 exactly once");
      }
      seen[id] = 1;
      spec.covers[id] = parse_cover(list);
    }
  } else {
    Malformed("'covers' must be an array or an object");
  }
  return spec;
}

ProbabilisticCoverageSpec ParseProbabilisticCoverage(const json& params) {
  ProbabilisticCoverageSpec spec;
  spec.demands = Numbers(Field(params, "demands"), "demands");
  const json& rows = Field(params, "probabilities");
  if (!rows.is_array()) Malformed("'probabilities' must be an array of rows");
  for (const json& row : rows) spec.probabilities.push_back(Numbers(row, "probabilities"));
  return spec;
}

AdversarialSpec ParseAdversarial(const json& params) {
  AdversarialSpec spec;
  spec.v = Ids(Field(params, "V"), "V");
  spec.v_star = Ids(Field(params, "V_star"), "V_star");
  const json& k = Field(params, "k");
  if (!k.is_number_integer() || k.get<long long>() < 1) Malformed("'k' must be an integer >= 1");
  spec.k = static_cast<std::size_t>(k.get<long long>());
  return spec;
}

ModularSpec ParseModular(const json& params) {
  return ModularSpec{Numbers(Field(params, "weights"), "weights")};
}

Budget ParseBudget(const json& value) {
  if (value.is_string() && value.get<std::string>() == "unlimited") return Budget::Unlimited();
  if (value.is_number_integer() && value.get<long long>() >= 1) {
    return Budget::AtMost(static_cast<std::size_t>(value.get<long long>()));
  }
  Malformed("'budget' must be a positive integer or \"unlimited\"");
}

json IdArray(std::span<const ElementId> ids) {
  json out = json::array();
  for (ElementId x : ids) out.push_back(x);
  return out;
}

}  // namespace

Instance ParseInstance(const json& document) {
  try {
    const std::string type = Field(document, "type").get<std::string>();
    const json& params = Field(document, "params");
    std::optional<AdversarialSpec> adversarial;
    std::optional<Oracle> oracle;
    if (type == "weighted_coverage") {
      oracle = BuildWeightedCoverage(ParseWeightedCoverage(params));
    } else if (type == "probabilistic_coverage") {
      oracle = BuildProbabilisticCoverage(ParseProbabilisticCoverage(params));
    } else if (type == "adversarial") {
      adversarial = ParseAdversarial(params);
      oracle = BuildAdversarial(*adversarial);
    } else if (type == "modular") {
      oracle = BuildModular(ParseModular(params));
    } else {
      Malformed("unknown instance type '" + type + "'");
    }
    if (document.contains("budget")) {
      oracle = oracle->WithBudget(ParseBudget(document.at("budget")));
    }
    return Instance{type, *oracle, adversarial};
  } catch (const json::exception& e) {
    Malformed(std::string("instance JSON: ") + e.what());
  }
}

Instance LoadInstance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Malformed("cannot open instance file " + path.string());
  json document;
  try {
    in >> document;
  } catch (const json::exception& e) {
    Malformed(path.string() + ": " + e.what());
  }
  return ParseInstance(document);
}

json ToJson(const WeightedCoverageSpec& spec) {
  json weights = json::object();
  for (const auto& [name, w] : spec.universe_weights) weights[name] = w;
  return {{"type", "weighted_coverage"},
          {"params", {{"universe_weights", weights}, {"covers", spec.covers}}}};
}

json ToJson(const ProbabilisticCoverageSpec& spec) {
  return {{"type", "probabilistic_coverage"},
          {"params", {{"demands", spec.demands}, {"probabilities", spec.probabilities}}}};
}

json ToJson(const AdversarialSpec& spec) {
  return {{"type", "adversarial"},
          {"params", {{"V", IdArray(spec.v)}, {"V_star", IdArray(spec.v_star)}, {"k", spec.k}}}};
}

json ToJson(const ModularSpec& spec) {
  return {{"type", "modular"}, {"params", {{"weights", spec.weights}}}};
}

json NumberOrInf(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

double NumberFromJson(const json& value) {
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    Malformed("expected a number or \"inf\", got \"" + s + "\"");
  }
  if (!value.is_number()) Malformed("expected a number");
  return value.get<double>();
}

json TraceToJson(const RunTrace& trace) {
  json selections = json::array();
  for (const Selection& s : trace.selections) {
    selections.push_back(
        {{"i", s.iteration}, {"element", s.element}, {"estimate", NumberOrInf(s.estimate)}});
  }
  json doc = {{"schema", kSchema},
              {"algorithm", AlgorithmName(trace.algorithm)},
              {"n", trace.n}};
  if (trace.k) doc["k"] = *trace.k;
  doc["selections"] = selections;
  if (trace.true_marginals) {
    json marginals = json::array();
    for (double v : *trace.true_marginals) marginals.push_back(NumberOrInf(v));
    doc["true_marginals"] = marginals;
  } else {
    doc["true_marginals"] = nullptr;
  }
  doc["final_set"] = IdArray(trace.final_set);
  doc["query_counts"] = {{"size1", trace.query_counts.size1},
                         {"size2", trace.query_counts.size2},
                         {"other", trace.query_counts.other}};
  return doc;
}

RunTrace TraceFromJson(const json& document) {
  try {
    RunTrace trace;
    const std::string name = Field(document, "algorithm").get<std::string>();
    const auto algorithm = ParseAlgorithm(name);
    if (!algorithm) Malformed("unknown algorithm '" + name + "'");
    trace.algorithm = *algorithm;
    trace.n = Field(document, "n").get<std::size_t>();
    if (document.contains("k") && !document.at("k").is_null()) {
      trace.k = document.at("k").get<std::size_t>();
    }
    for (const json& s : Field(document, "selections")) {
      trace.selections.push_back({Field(s, "i").get<std::size_t>(),
                                  Field(s, "element").get<ElementId>(),
                                  NumberFromJson(Field(s, "estimate"))});
    }
    if (document.contains("true_marginals") && !document.at("true_marginals").is_null()) {
      std::vector<double> marginals;
      for (const json& v : document.at("true_marginals")) marginals.push_back(NumberFromJson(v));
      trace.true_marginals = std::move(marginals);
    }
    trace.final_set = trace.Sequence();
    std::sort(trace.final_set.begin(), trace.final_set.end());
    if (document.contains("query_counts")) {
      const json& q = document.at("query_counts");
      trace.query_counts.size1 = q.value("size1", std::uint64_t{0});
      trace.query_counts.size2 = q.value("size2", std::uint64_t{0});
      trace.query_counts.other = q.value("other", std::uint64_t{0});
    }
    return trace;
  } catch (const json::exception& e) {
    Malformed(std::string("trace JSON: ") + e.what());
  }
}

json BoundReportToJson(const BoundReport& report) {
  json alphas = json::array();
  for (const AlphaFactor& a : report.alphas) alphas.push_back(NumberOrInf(a.value()));
  return {{"schema", kSchema},
          {"method", BoundMethodName(report.method)},
          {"alphas", alphas},
          {"gamma", report.gamma}};
}

json VerificationReportToJson(const VerificationReport& report) {
  json doc = {{"schema", kSchema},
              {"property", PropertyName(report.property)},
              {"holds", report.holds},
              {"mode", report.exhaustive ? "exhaustive" : "sampled"},
              {"instances_checked", report.instances_checked}};
  if (report.witness) {
    json witness = json::array();
    for (const auto& set : *report.witness) witness.push_back(IdArray(set));
    doc["witness"] = witness;
    if (report.lhs) doc["lhs"] = NumberOrInf(*report.lhs);
    if (report.rhs) doc["rhs"] = NumberOrInf(*report.rhs);
  } else {
    doc["witness"] = nullptr;
  }
  return doc;
}

json BruteForceToJson(const BruteForceResult& result, std::size_t n) {
  return {{"schema", kSchema},
          {"n", n},
          {"set", IdArray(result.set)},
          {"value", result.value},
          {"subsets_examined", result.subsets_examined}};
}

}  // namespace pairsub
