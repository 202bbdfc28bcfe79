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

#include <chrono>
#include <exception>
#include <string>
#include <utility>

#include "psplit/bench.h"
#include "psplit/lp.h"

namespace psplit {
namespace {

ReportRow Label(const Problem& problem, const GenSpec& label,
                SolverKind solver) {
  ReportRow row;
  row.n = problem.num_vars();
  row.m = problem.num_rows();
  row.corr = CorrelationName(label.correlation);
  row.seed = label.seed;
  row.solver = solver;
  return row;
}

void Fail(ReportRow& row, std::string token, const std::exception& e) {
  row.status = std::move(token);
  row.detail = e.what();
}

void FillSearch(ReportRow& row, const SearchStats& stats) {
  row.levels = stats.levels_scanned;
  if (const auto av = stats.FinalLevelAv()) row.av_pct = *av;
  row.peak_list = stats.peak_list_size;
  row.lp_solves = stats.lp_solves + stats.dual_resolves;
  row.mem_bytes = stats.peak_memory_bytes;
}

void Run(const Problem& problem, const BatchLimits& limits, ReportRow& row) {
  switch (row.solver) {
    case SolverKind::kPsa: {
      try {
        const Outcome out = Solve(problem, limits.search);
        FillSearch(row, out.stats);
        if (out.status == SearchStatus::kOptimal) {
          row.status = "optimal";
          row.value = out.value;
        } else {
          row.status = "infeasible";
        }
      } catch (const SearchAborted& e) {
        FillSearch(row, e.stats());
        Fail(row, "limit", e);
      }
      return;
    }
    case SolverKind::kBranchAndBound:
    case SolverKind::kBruteForce: {
      const OracleResult out =
          row.solver == SolverKind::kBranchAndBound
              ? BranchAndBound(problem, limits.branch_and_bound)
              : BruteForce(problem, limits.max_points);
      if (out.status == OracleStatus::kOptimal) {
        row.status = "optimal";
        row.value = out.value;
      } else {
        row.status = "infeasible";
      }
      return;
    }
  }
}

}  // namespace

std::string SolverName(SolverKind solver) {
  switch (solver) {
    case SolverKind::kPsa:
      return "psa";
    case SolverKind::kBranchAndBound:
      return "bb";
    case SolverKind::kBruteForce:
      return "brute";
  }
  return "?";
}

SolverKind ParseSolver(std::string_view text) {
  if (text == "psa") return SolverKind::kPsa;
  if (text == "bb") return SolverKind::kBranchAndBound;
  if (text == "brute") return SolverKind::kBruteForce;
  throw InputError("unknown solver '" + std::string(text) + "'");
}

ReportRow RunInstance(const Problem& problem, const GenSpec& label,
                      SolverKind solver, const BatchLimits& limits) {
  ReportRow row = Label(problem, label, solver);
  const auto start = std::chrono::steady_clock::now();
  try {
    Run(problem, limits, row);
  } catch (const ResourceLimit& e) {
    Fail(row, "limit", e);
  } catch (const UnboundedRelaxation& e) {
    Fail(row, "unbounded", e);
  } catch (const lp::LpError& e) {
    Fail(row, "numerical", e);
  } catch (const InputError& e) {
    Fail(row, "input", e);
  } catch (const std::exception& e) {
    Fail(row, "error", e);
  }
  row.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start)
                   .count();
  return row;
}

RunReport RunBatch(std::span<const GenSpec> specs,
                   std::span<const SolverKind> solvers,
                   const BatchLimits& limits) {
  RunReport report;
  for (const GenSpec& spec : specs) {
    std::optional<Problem> problem;
    std::string failure;
    try {
      problem = Generate(spec);
    } catch (const std::exception& e) {
      failure = e.what();
    }
    for (SolverKind solver : solvers) {
      if (problem) {
        report.rows.push_back(RunInstance(*problem, spec, solver, limits));
        continue;
      }
      ReportRow row;
      row.n = spec.n;
      row.m = spec.m;
      row.corr = CorrelationName(spec.correlation);
      row.seed = spec.seed;
      row.solver = solver;
      row.status = "input";
      row.detail = failure;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

VerifyReport Verify(const GenSpec& base, int count,
                    const BatchLimits& limits) {
  VerifyReport report;
  const SolverKind solvers[] = {SolverKind::kPsa, SolverKind::kBranchAndBound,
                                SolverKind::kBruteForce};
  for (int k = 0; k < count; ++k) {
    GenSpec spec = base;
    spec.seed = base.seed + static_cast<std::uint64_t>(k);
    const Problem problem = Generate(spec);
    ++report.instances;
    std::vector<ReportRow> rows;
    for (SolverKind solver : solvers) {
      rows.push_back(RunInstance(problem, spec, solver, limits));
    }
    const std::string where = "seed " + std::to_string(spec.seed) + ": ";
    for (const ReportRow& row : rows) {
      if (!row.ok()) {
        report.mismatches.push_back(where + SolverName(row.solver) +
                                    " failed (" + row.status + ") " +
                                    row.detail);
      }
    }
    const ReportRow& ref = rows.back();
    if (!ref.ok()) continue;
    for (std::size_t s = 0; s + 1 < rows.size(); ++s) {
      const ReportRow& row = rows[s];
      if (!row.ok()) continue;
      if (row.status != ref.status || row.value != ref.value) {
        report.mismatches.push_back(
            where + SolverName(row.solver) + " reports " + row.status +
            (row.value ? " " + row.value->str() : "") + ", brute reports " +
            ref.status + (ref.value ? " " + ref.value->str() : ""));
      }
    }
  }
  return report;
}

}  // namespace psplit
