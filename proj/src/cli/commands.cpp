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

#include "pairsub/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pairsub/algorithms.hpp"
#include "pairsub/bench.hpp"
#include "pairsub/bounds.hpp"
#include "pairsub/data.hpp"
#include "pairsub/error.hpp"
#include "pairsub/functions.hpp"
#include "pairsub/io.hpp"
#include "pairsub/verify.hpp"

namespace pairsub {
namespace {

using nlohmann::json;

constexpr int kExitError = 1;

// Where the instance comes from. Exactly one of the three must be set.
struct SourceFlags {
  std::string instance;
  std::string districts;
  std::optional<double> range;
  std::size_t synthetic = 0;
  std::uint64_t seed = 0;
};

void AddSourceFlags(CLI::App* cmd, SourceFlags& flags, bool allow_synthetic) {
  cmd->add_option("--instance", flags.instance, "instance JSON file");
  cmd->add_option("--districts", flags.districts, "district demand CSV");
  cmd->add_option("--rs", flags.range, "kernel range r_s (required with --districts)");
  if (allow_synthetic) {
    cmd->add_option("--synthetic", flags.synthetic,
                    "generate a seeded synthetic demand field with this many districts");
  }
}

Instance LoadSource(const SourceFlags& flags) {
  const int sources = static_cast<int>(!flags.instance.empty()) +
                      static_cast<int>(!flags.districts.empty()) +
                      static_cast<int>(flags.synthetic > 0);
  if (sources != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "give exactly one of --instance, --districts or --synthetic");
  }
  if (!flags.instance.empty()) return LoadInstance(flags.instance);
  KernelConfig config;
  if (!flags.districts.empty()) {
    if (!flags.range) throw Error(ErrorCode::kInvalidArgument, "--districts requires --rs");
    config.range = *flags.range;
    return Instance{"probabilistic_coverage",
                    BuildProbabilisticCoverage(
                        BuildCoverageInstance(LoadDistricts(flags.districts), config)),
                    std::nullopt};
  }
  if (flags.range) config.range = *flags.range;
  return Instance{"probabilistic_coverage",
                  BuildProbabilisticCoverage(BuildCoverageInstance(
                      SyntheticDistricts(flags.synthetic, flags.seed), config)),
                  std::nullopt};
}

void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) {
    throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  }
}

std::string Dump(const json& document) { return document.dump(2) + "\n"; }

Algorithm RequireAlgorithm(const std::string& name) {
  const auto algorithm = ParseAlgorithm(name);
  if (!algorithm) throw Error(ErrorCode::kInvalidArgument, "unknown algorithm '" + name + "'");
  return *algorithm;
}

void RequirePositiveN(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "--n must be >= 1");
}

std::vector<ElementId> ParseIdList(const std::string& text) {
  std::vector<ElementId> ids;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    std::size_t used = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != token.size()) {
      throw Error(ErrorCode::kInvalidArgument, "bad element id '" + token + "' in --solution");
    }
    ids.push_back(static_cast<ElementId>(value));
  }
  return ids;
}

void WarnAdversarial(const Instance& instance, std::size_t n, std::ostream& err) {
  if (instance.adversarial && instance.adversarial->v_star.size() != n) {
    err << "warning: n = " << n << " differs from |V_star| = "
        << instance.adversarial->v_star.size()
        << "; the k/n tightness statement does not apply\n";
  }
}

// ---- run

struct RunFlags {
  SourceFlags source;
  std::string algorithm;
  std::size_t n = 0;
  std::size_t k = 2;
  std::optional<std::size_t> budget;
  bool audit = false;
  std::string out;
};

void CmdRun(const RunFlags& flags, bool k_given, std::ostream& out, std::ostream& err) {
  const Algorithm algorithm = RequireAlgorithm(flags.algorithm);
  RequirePositiveN(flags.n);
  if (k_given && algorithm != Algorithm::kKWiseOptimistic) {
    throw Error(ErrorCode::kInvalidArgument, "--k applies to k_wise_optimistic only");
  }
  const Instance instance = LoadSource(flags.source);
  WarnAdversarial(instance, flags.n, err);
  Oracle oracle = instance.oracle;
  if (flags.budget) oracle = oracle.WithBudget(Budget::AtMost(*flags.budget));

  RunTrace trace = RunAlgorithm(algorithm, oracle, flags.n, flags.k);
  json document;
  if (flags.audit) {
    // The audit reuses the instance's own view; a pairwise-only instance
    // fails here with BudgetExceeded.
    AuditTrace(trace, instance.oracle);
    const double value = instance.oracle.Evaluate(trace.final_set);
    const RunTrace full = GreedyFull(instance.oracle, flags.n);
    const double full_value = instance.oracle.Evaluate(full.final_set);
    document = TraceToJson(trace);
    document["value"] = value;
    document["full_greedy_value"] = full_value;
    document["percent_of_full_greedy"] =
        ApproxZero(full_value) ? 100.0 : 100.0 * value / full_value;
  } else {
    document = TraceToJson(trace);
  }
  Emit(flags.out, Dump(document), out);
}

// ---- bound

struct BoundFlags {
  std::string instance;
  std::string trace;
  std::string solution;
  std::string method = "algorithm1";
  std::optional<double> tau2;
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
  std::string out;
};

void CmdBound(const BoundFlags& flags, std::ostream& out) {
  const auto method = ParseBoundMethod(flags.method);
  if (!method) throw Error(ErrorCode::kInvalidArgument, "unknown method '" + flags.method + "'");
  if (!flags.trace.empty() && !flags.solution.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "give either --trace or --solution, not both");
  }
  const Instance instance = LoadInstance(flags.instance);
  std::optional<RunTrace> trace;
  if (!flags.trace.empty()) {
    std::ifstream in(flags.trace);
    if (!in) throw Error(ErrorCode::kMalformedSpec, "cannot open trace " + flags.trace);
    json document;
    try {
      in >> document;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kMalformedSpec, flags.trace + ": " + e.what());
    }
    trace = TraceFromJson(document);
  }
  auto require_trace = [&]() -> const RunTrace& {
    if (!trace) {
      throw Error(ErrorCode::kInvalidArgument,
                  "--method " + flags.method + " needs a --trace from the matching algorithm");
    }
    return *trace;
  };

  BoundReport report;
  json extra = json::object();
  switch (*method) {
    case BoundMethod::kPostHocPairwise: {
      std::vector<ElementId> solution;
      if (trace) {
        solution = trace->Sequence();
      } else if (!flags.solution.empty()) {
        solution = ParseIdList(flags.solution);
      } else {
        throw Error(ErrorCode::kInvalidArgument, "algorithm1 needs --trace or --solution");
      }
      report = PostHocBound(solution, instance.oracle);
      break;
    }
    case BoundMethod::kOptimisticCurvature: {
      const RunTrace& t = require_trace();
      report.method = *method;
      report.alphas = AlphasOptimistic(t, instance.oracle);
      report.gamma = BoundFromAlphas(report.alphas, t.n);
      break;
    }
    case BoundMethod::kKWiseCurvature: {
      const RunTrace& t = require_trace();
      const std::size_t k = flags.k.value_or(t.k.value_or(2));
      report.method = *method;
      report.alphas = AlphasKWise(t, instance.oracle, k);
      report.gamma = BoundFromAlphas(report.alphas, t.n);
      extra["k"] = k;
      break;
    }
    case BoundMethod::kCardinalityCurvature: {
      if (trace && trace->algorithm != Algorithm::kPessimistic) {
        throw Error(ErrorCode::kTraceMismatch,
                    "theorem5 applies to pessimistic traces, got " +
                        std::string(AlgorithmName(trace->algorithm)));
      }
      std::size_t n = 0;
      if (flags.n) {
        n = *flags.n;
      } else if (trace) {
        n = trace->n;
      } else if (!flags.solution.empty()) {
        n = ParseIdList(flags.solution).size();
      }
      RequirePositiveN(n);
      const double tau2 = flags.tau2 ? *flags.tau2 : KCardinalityCurvature(instance.oracle, 2);
      report.method = *method;
      report.alphas = AlphasPessimistic(tau2, n);
      report.gamma = BoundFromAlphas(report.alphas, n);
      extra["tau2"] = tau2;
      break;
    }
  }
  json document = BoundReportToJson(report);
  document.update(extra);
  Emit(flags.out, Dump(document), out);
}

// ---- verify

struct VerifyFlags {
  std::string instance;
  std::vector<std::string> properties;
  std::size_t limit = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 20000;
  std::string mode = "auto";
  bool soc_disjoint = false;
  std::string out;
};

void CmdVerify(const VerifyFlags& flags, std::ostream& out) {
  CheckOptions options;
  options.exhaustive_limit = flags.limit;
  options.seed = flags.seed;
  options.samples = flags.samples;
  options.soc_disjoint = flags.soc_disjoint;
  if (flags.mode == "auto") {
    options.mode = CheckMode::kAuto;
  } else if (flags.mode == "exhaustive") {
    options.mode = CheckMode::kExhaustive;
  } else if (flags.mode == "sampled") {
    options.mode = CheckMode::kSampled;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown --mode '" + flags.mode + "'");
  }
  std::vector<Property> properties;
  for (const std::string& name : flags.properties) {
    const auto property = ParseProperty(name);
    if (!property) throw Error(ErrorCode::kInvalidArgument, "unknown property '" + name + "'");
    properties.push_back(*property);
  }
  if (properties.empty()) properties = AllProperties();

  const Instance instance = LoadInstance(flags.instance);
  json reports = json::array();
  for (Property property : properties) {
    reports.push_back(VerificationReportToJson(Check(property, instance.oracle, options)));
  }
  Emit(flags.out, Dump({{"schema", kSchema}, {"reports", reports}}), out);
}

// ---- bench

struct BenchFlags {
  SourceFlags source;
  std::vector<std::string> algorithms{"full", "optimistic", "pessimistic"};
  std::vector<std::size_t> n_grid;
  std::size_t trials = 5;
  std::size_t k = 2;
  std::string ratio;
  std::string out;
};

void CmdBench(const BenchFlags& flags, std::ostream& out) {
  std::vector<Algorithm> algorithms;
  for (const std::string& name : flags.algorithms) algorithms.push_back(RequireAlgorithm(name));
  if (flags.n_grid.empty()) throw Error(ErrorCode::kInvalidArgument, "--n-grid is empty");
  if (!std::is_sorted(flags.n_grid.begin(), flags.n_grid.end())) {
    throw Error(ErrorCode::kInvalidArgument, "--n-grid must be ascending");
  }
  for (std::size_t n : flags.n_grid) RequirePositiveN(n);
  const bool has_full =
      std::find(algorithms.begin(), algorithms.end(), Algorithm::kFull) != algorithms.end();
  if (!flags.ratio.empty() && !has_full) {
    throw Error(ErrorCode::kInvalidArgument, "--ratio needs 'full' among --algos");
  }
  const Instance instance = LoadSource(flags.source);
  const std::vector<TimingRecord> records =
      ScalingSweep(algorithms, instance.oracle, flags.n_grid, flags.trials, flags.k);

  std::ostringstream csv;
  WriteTimingCsv(csv, records);
  Emit(flags.out, csv.str(), out);
  if (flags.ratio.empty()) return;

  auto rows_of = [&](Algorithm algorithm) {
    std::vector<TimingRecord> rows;
    for (const TimingRecord& r : records) {
      if (r.algorithm == AlgorithmName(algorithm)) rows.push_back(r);
    }
    return rows;
  };
  const std::vector<TimingRecord> full = rows_of(Algorithm::kFull);
  std::ostringstream ratios;
  bool header = true;
  for (Algorithm algorithm : algorithms) {
    if (algorithm == Algorithm::kFull) continue;
    const auto rows = rows_of(algorithm);
    WriteRatioCsv(ratios, std::string(AlgorithmName(algorithm)), SpeedupRatios(full, rows),
                  header);
    header = false;
  }
  Emit(flags.ratio, ratios.str(), out);
}

// ---- bruteforce

struct BruteForceFlags {
  std::string instance;
  std::size_t n = 0;
  std::uint64_t limit = kDefaultEnumerationLimit;
  std::string out;
};

void CmdBruteForce(const BruteForceFlags& flags, std::ostream& out, std::ostream& err) {
  RequirePositiveN(flags.n);
  const Instance instance = LoadInstance(flags.instance);
  WarnAdversarial(instance, flags.n, err);
  const BruteForceResult result = BruteForceOptimal(instance.oracle, flags.n, flags.limit);
  Emit(flags.out, Dump(BruteForceToJson(result, flags.n)), out);
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Submodular maximization with k-wise oracle access", "pairsub"};
  app.require_subcommand(1);

  RunFlags run;
  CLI::App* run_cmd = app.add_subcommand("run", "run one greedy strategy, emit a trace");
  AddSourceFlags(run_cmd, run.source, /*allow_synthetic=*/false);
  run_cmd->add_option("--algo", run.algorithm, "full|uninformed|optimistic|pessimistic|k_wise_optimistic")
      ->required();
  run_cmd->add_option("--n", run.n, "number of elements to select")->required();
  CLI::Option* k_option = run_cmd->add_option("--k", run.k, "subset size for k_wise_optimistic");
  run_cmd->add_option("--budget", run.budget, "largest query size allowed");
  run_cmd->add_flag("--audit", run.audit, "add true marginals and percent of full greedy");
  run_cmd->add_option("--out", run.out, "output path (default stdout)");

  BoundFlags bound;
  CLI::App* bound_cmd = app.add_subcommand("bound", "approximation certificate for a run");
  bound_cmd->add_option("--instance", bound.instance, "instance JSON file")->required();
  bound_cmd->add_option("--trace", bound.trace, "trace JSON from `run`");
  bound_cmd->add_option("--solution", bound.solution, "comma-separated ids in selection order");
  bound_cmd->add_option("--method", bound.method, "algorithm1|theorem2|theorem3|theorem5");
  bound_cmd->add_option("--tau2", bound.tau2, "2-cardinality curvature (theorem5)");
  bound_cmd->add_option("--n", bound.n, "cardinality (theorem5)");
  bound_cmd->add_option("--k", bound.k, "subset size (theorem3)");
  bound_cmd->add_option("--out", bound.out, "output path (default stdout)");

  VerifyFlags verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "check structural properties");
  verify_cmd->add_option("--instance", verify.instance, "instance JSON file")->required();
  verify_cmd->add_option("--property", verify.properties, "property to check (repeatable)");
  verify_cmd->add_option("--limit", verify.limit, "largest ground set checked exhaustively");
  verify_cmd->add_option("--seed", verify.seed, "sampling seed");
  verify_cmd->add_option("--samples", verify.samples, "samples in sampled mode");
  verify_cmd->add_option("--mode", verify.mode, "auto|exhaustive|sampled");
  verify_cmd->add_flag("--soc-disjoint", verify.soc_disjoint,
                       "only test S disjoint from B and C in the conditioning check");
  verify_cmd->add_option("--out", verify.out, "output path (default stdout)");

  BenchFlags bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "time strategies over an n grid");
  AddSourceFlags(bench_cmd, bench.source, /*allow_synthetic=*/true);
  bench_cmd->add_option("--seed", bench.source.seed, "seed for --synthetic");
  bench_cmd->add_option("--algos", bench.algorithms, "comma-separated algorithms")
      ->delimiter(',');
  bench_cmd->add_option("--n-grid", bench.n_grid, "comma-separated ascending n values")
      ->delimiter(',')
      ->required();
  bench_cmd->add_option("--trials", bench.trials, "timed trials per point");
  bench_cmd->add_option("--k", bench.k, "subset size for k_wise_optimistic");
  bench_cmd->add_option("--ratio", bench.ratio, "write full/other speedup ratios CSV here");
  bench_cmd->add_option("--out", bench.out, "timing CSV path (default stdout)");

  BruteForceFlags brute;
  CLI::App* brute_cmd = app.add_subcommand("bruteforce", "exact optimum by enumeration");
  brute_cmd->add_option("--instance", brute.instance, "instance JSON file")->required();
  brute_cmd->add_option("--n", brute.n, "cardinality")->required();
  brute_cmd->add_option("--limit", brute.limit, "largest number of subsets to enumerate");
  brute_cmd->add_option("--out", brute.out, "output path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*run_cmd) {
      CmdRun(run, k_option->count() > 0, out, err);
    } else if (*bound_cmd) {
      CmdBound(bound, out);
    } else if (*verify_cmd) {
      CmdVerify(verify, out);
    } else if (*bench_cmd) {
      CmdBench(bench, out);
    } else if (*brute_cmd) {
      CmdBruteForce(brute, out, err);
    }
  } catch (const Error& e) {
    err << "error [" << ErrorCodeName(e.code()) << "]: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}

}  // namespace pairsub
