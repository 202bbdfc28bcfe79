// Copyright 2026 The psplit Authors.
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

// Command-line front end.
//
//   psplit generate --n 50 --m 3 --alpha 0.5 --corr uncorrelated --seed 1
//                   --out inst.pilp
//   psplit solve inst.pilp --solver psa --split max-coeff --list lifo
//   psplit verify --n 10 --m 3 --count 100 --seed 1
//   psplit bench --spec batch.csv --out report.csv
//   psplit dump-projections inst.pilp --level 11
//
// Exit codes: 0 ok, 1 infeasible, 2 input error, 3 resource limit.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "psplit/bench.h"
#include "psplit/errors.h"
#include "psplit/lp.h"
#include "psplit/model.h"
#include "psplit/oracle.h"
#include "psplit/projection.h"
#include "psplit/search.h"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using psplit::ExecutionPolicy;

enum ExitCode {
  kOk = 0,
  kInfeasible = 1,
  kMismatch = 1,
  kInputError = 2,
  kResourceLimit = 3,
};

struct SearchFlags {
  std::string split = "max-coeff";
  std::string list = "lifo";
  bool stream_check = false;
  std::string projection = "auto";
  double range_tol = 1e-6;
  std::int64_t iter_cap = -1;
  std::int64_t max_list_size = 0;
  double time_limit = 0.0;
  bool serial = false;
  int threads = 0;

  void Register(CLI::App* app) {
    app->add_option("--split", split, "Split variable policy")
        ->check(CLI::IsMember({"max-coeff", "min-range", "first"}));
    app->add_option("--list", list, "Candidate list policy")
        ->check(CLI::IsMember({"lifo", "fifo"}));
    app->add_flag("--stream-check", stream_check,
                  "Test candidates as soon as they are generated");
    app->add_option("--projection", projection, "Projection mode")
        ->check(CLI::IsMember({"auto", "exact", "two-phase"}));
    app->add_option("--range-tol", range_tol, "Range membership tolerance")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--iter-cap", iter_cap,
                    "Dual simplex iteration cap for re-solves (-1: none)");
    app->add_option("--max-list-size", max_list_size,
                    "Abort when the candidate list grows beyond this (0: no "
                    "limit)")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--time-limit", time_limit, "Seconds (0: no limit)")
        ->check(CLI::NonNegativeNumber);
    app->add_flag("--serial", serial, "Build projections on one thread");
    app->add_option("--threads", threads, "OpenMP threads (0: default)")
        ->check(CLI::NonNegativeNumber);
  }

  psplit::SearchConfig Config() const {
    psplit::SearchConfig config;
    config.split = split == "min-range" ? psplit::SplitPolicy::kMinRange
                   : split == "first"   ? psplit::SplitPolicy::kFirstIndex
                                        : psplit::SplitPolicy::kMaxCoefficient;
    config.list =
        list == "fifo" ? psplit::ListPolicy::kFifo : psplit::ListPolicy::kLifo;
    config.stream_check = stream_check;
    config.projection_mode =
        projection == "exact"       ? psplit::ProjectionMode::kExact
        : projection == "two-phase" ? psplit::ProjectionMode::kTwoPhase
                                    : psplit::ProjectionMode::kAuto;
    config.projection.range_tol = range_tol;
    config.projection.iter_cap = iter_cap;
    config.projection.policy =
        serial ? ExecutionPolicy::kSerial : ExecutionPolicy::kParallel;
    config.max_list_size = max_list_size;
    config.time_limit_seconds = time_limit;
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif
    return config;
  }
};

std::string Join(const std::vector<std::int64_t>& values) {
  std::string out = "{";
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(values[k]);
  }
  return out + "}";
}

void PrintTrace(const std::vector<psplit::TraceEvent>& trace) {
  using psplit::TraceKind;
  for (const psplit::TraceEvent& e : trace) {
    const std::string var = "x" + std::to_string(e.var);
    switch (e.kind) {
      case TraceKind::kLevel:
        std::cout << "level " << e.level << "\n";
        break;
      case TraceKind::kEmptyRange:
        std::cout << "  empty range " << var << "\n";
        break;
      case TraceKind::kFix:
        std::cout << "  fix " << var << " = " << e.value << "\n";
        break;
      case TraceKind::kSplit:
        std::cout << "  split " << var << " over " << Join(e.values) << "\n";
        break;
      case TraceKind::kCandidate:
        std::cout << "  candidate " << e.point.ToString() << "\n";
        break;
      case TraceKind::kIncumbent:
        std::cout << "  incumbent " << e.point.ToString() << " value "
                  << e.value << "\n";
        break;
      case TraceKind::kOptimal:
        std::cout << "  optimal " << e.point.ToString() << "\n";
        break;
    }
  }
}

int SolvePsa(const psplit::Problem& problem, const SearchFlags& flags,
             bool trace) {
  psplit::SearchConfig config = flags.Config();
  config.record_trace = trace;
  const psplit::Outcome out = psplit::Solve(problem, config);
  if (trace) PrintTrace(out.trace);
  const psplit::SearchStats& s = out.stats;
  const bool optimal = out.status == psplit::SearchStatus::kOptimal;
  std::cout << "status " << (optimal ? "optimal" : "infeasible") << "\n";
  if (optimal) {
    std::cout << "value " << out.value << "\n"
              << "point " << out.point.ToString() << "\n";
  }
  std::cout << "levels " << s.levels_scanned << "\n";
  if (const auto av = s.FinalLevelAv()) std::cout << "av_pct " << *av << "\n";
  std::cout << "peak_list " << s.peak_list_size << "\n"
            << "lp_solves " << s.lp_solves << "\n"
            << "dual_resolves " << s.dual_resolves << "\n"
            << "candidates " << s.candidates_checked << "\n"
            << "mem_bytes " << s.peak_memory_bytes << "\n";
  return optimal ? kOk : kInfeasible;
}

int SolveOracle(const psplit::Problem& problem, bool brute,
                std::int64_t max_nodes) {
  psplit::OracleResult out;
  if (brute) {
    out = psplit::BruteForce(problem);
  } else {
    psplit::BranchAndBoundOptions options;
    options.max_nodes = max_nodes;
    out = psplit::BranchAndBound(problem, options);
  }
  const bool optimal = out.status == psplit::OracleStatus::kOptimal;
  std::cout << "status " << (optimal ? "optimal" : "infeasible") << "\n";
  if (optimal) {
    std::cout << "value " << out.value << "\n"
              << "point " << out.point.ToString() << "\n";
  }
  std::cout << (brute ? "points " : "nodes ") << out.count << "\n";
  return optimal ? kOk : kInfeasible;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw psplit::InputError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  out << text;
  if (!out) throw psplit::InputError("cannot write '" + path + "'");
}

int Run(int argc, char** argv) {
  CLI::App app{"Exact pure-integer LP solver by objective level sweep"};
  app.require_subcommand(1);

  psplit::GenSpec gen;
  std::string gen_corr = "uncorrelated";
  std::string gen_out;
  CLI::App* generate = app.add_subcommand("generate", "Random 0-1 MKP");
  generate->add_option("--n", gen.n, "Variables")->required();
  generate->add_option("--m", gen.m, "Constraints")->required();
  generate->add_option("--alpha", gen.alpha, "Tightness ratio");
  generate->add_option("--corr", gen_corr, "uncorrelated | weak");
  generate->add_option("--seed", gen.seed, "PRNG seed");
  generate->add_flag("--exact-b", gen.exact_b,
                     "Keep b as the exact rational alpha * row sum");
  generate->add_option("--out", gen_out, "Output file (default stdout)");

  std::string solve_file;
  std::string solver = "psa";
  bool solve_trace = false;
  std::int64_t max_nodes = 1'000'000;
  SearchFlags solve_flags;
  CLI::App* solve = app.add_subcommand("solve", "Solve an instance file");
  solve->add_option("file", solve_file, "Instance file")->required();
  solve->add_option("--solver", solver, "psa | bb | brute")
      ->check(CLI::IsMember({"psa", "bb", "brute"}));
  solve->add_flag("--trace", solve_trace, "Print the level-by-level trace");
  solve->add_option("--max-nodes", max_nodes, "Branch-and-bound node cap");
  solve_flags.Register(solve);

  psplit::GenSpec verify_spec;
  std::string verify_corr = "uncorrelated";
  int verify_count = 100;
  CLI::App* verify =
      app.add_subcommand("verify", "Cross-check solvers on random instances");
  verify->add_option("--n", verify_spec.n, "Variables")->required();
  verify->add_option("--m", verify_spec.m, "Constraints")->required();
  verify->add_option("--count", verify_count, "Instances")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_spec.seed, "First seed");
  verify->add_option("--alpha", verify_spec.alpha, "Tightness ratio");
  verify->add_option("--corr", verify_corr, "uncorrelated | weak");

  std::string bench_spec;
  std::string bench_out;
  std::vector<std::string> bench_solvers{"psa"};
  SearchFlags bench_flags;
  CLI::App* bench = app.add_subcommand("bench", "Run a batch and report");
  bench->add_option("--spec", bench_spec, "CSV: n,m,alpha,corr,seed[,count]")
      ->required();
  bench->add_option("--out", bench_out, "CSV report file");
  bench->add_option("--solvers", bench_solvers, "psa bb brute")
      ->delimiter(',')
      ->check(CLI::IsMember({"psa", "bb", "brute"}));
  bench_flags.Register(bench);

  std::string dump_file;
  std::optional<std::int64_t> dump_level;
  std::string dump_projection = "auto";
  CLI::App* dump = app.add_subcommand(
      "dump-projections", "Print projections of the root problem as CSV");
  dump->add_option("file", dump_file, "Instance file")->required();
  dump->add_option("--level", dump_level,
                   "Keep only abscissae in the range at this level");
  dump->add_option("--projection", dump_projection, "Projection mode")
      ->check(CLI::IsMember({"auto", "exact", "two-phase"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*generate) {
      gen.correlation = psplit::ParseCorrelation(gen_corr);
      WriteText(gen_out, psplit::SerializeInstance(psplit::Generate(gen)));
      return kOk;
    }
    if (*solve) {
      const psplit::Problem problem = psplit::ReadInstanceFile(solve_file);
      if (solver == "psa") return SolvePsa(problem, solve_flags, solve_trace);
      return SolveOracle(problem, solver == "brute", max_nodes);
    }
    if (*verify) {
      verify_spec.correlation = psplit::ParseCorrelation(verify_corr);
      const psplit::VerifyReport report =
          psplit::Verify(verify_spec, verify_count);
      for (const std::string& line : report.mismatches) {
        std::cout << "MISMATCH " << line << "\n";
      }
      std::cout << report.instances << " instances, "
                << report.mismatches.size() << " mismatches\n";
      return report.mismatches.empty() ? kOk : kMismatch;
    }
    if (*bench) {
      const std::vector<psplit::GenSpec> specs =
          psplit::ParseSpecCsv(ReadFile(bench_spec));
      std::vector<psplit::SolverKind> solvers;
      for (const std::string& s : bench_solvers) {
        solvers.push_back(psplit::ParseSolver(s));
      }
      psplit::BatchLimits limits;
      limits.search = bench_flags.Config();
      const psplit::RunReport report = psplit::RunBatch(specs, solvers, limits);
      if (!bench_out.empty()) {
        WriteText(bench_out,
                  psplit::EmitReport(report, psplit::ReportFormat::kCsv));
      }
      std::cout << psplit::EmitReport(report, psplit::ReportFormat::kTable);
      return kOk;
    }
    if (*dump) {
      const psplit::Problem problem = psplit::ReadInstanceFile(dump_file);
      const psplit::ProjectionMode mode =
          dump_projection == "exact"       ? psplit::ProjectionMode::kExact
          : dump_projection == "two-phase" ? psplit::ProjectionMode::kTwoPhase
                                           : psplit::ProjectionMode::kAuto;
      const psplit::ProjectionOptions options;
      std::vector<psplit::Projection> projections =
          psplit::BuildProjections(problem, mode, options);
      if (dump_level) {
        for (psplit::Projection& p : projections) {
          const psplit::RangeSet range =
              psplit::Range(p, *dump_level, options.range_tol);
          std::erase_if(p.points, [&](const psplit::ProjectionPoint& pt) {
            return !std::binary_search(range.values.begin(),
                                       range.values.end(), pt.abscissa);
          });
        }
      }
      std::cout << psplit::ProjectionsCsv(projections);
      return kOk;
    }
  } catch (const psplit::RelaxationInfeasible&) {
    std::cout << "status infeasible\n";
    return kInfeasible;
  } catch (const psplit::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const psplit::UnboundedRelaxation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const psplit::SearchAborted& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    if (const auto& inc = e.incumbent()) {
      std::cout << "status aborted\n"
                << "incumbent " << inc->point.ToString() << " value "
                << inc->value << "\n";
    }
    return kResourceLimit;
  } catch (const psplit::ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const psplit::lp::LpError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) { return Run(argc, argv); }
