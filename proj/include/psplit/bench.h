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

// Random multidimensional 0-1 knapsack instances, a batch runner over the
// available solvers, and report rendering.

#ifndef PSPLIT_BENCH_H_
#define PSPLIT_BENCH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psplit/model.h"
#include "psplit/oracle.h"
#include "psplit/search.h"

namespace psplit {

enum class Correlation { kUncorrelated, kWeaklyCorrelated };

std::string CorrelationName(Correlation corr);
// Accepts "uncorrelated"/"u" and "weak"/"weakly"/"w". Throws InputError.
Correlation ParseCorrelation(std::string_view text);

struct GenSpec {
  int n = 1;
  int m = 1;
  double alpha = 0.5;  // tightness ratio, read as its shortest decimal
  Correlation correlation = Correlation::kUncorrelated;
  std::uint64_t seed = 0;
  // Keep b_i = alpha * sum_j a_ij as an exact rational instead of flooring.
  bool exact_b = false;

  // Throws InputError unless n >= 1, m >= 1 and 0 < alpha < 1.
  void Validate() const;
};

// alpha as num/den with den = 10^k, the shortest decimal that round-trips.
Rational DecimalAlpha(double alpha);

// a_ij uniform on [0, 1000]; b_i = floor(alpha * sum_j a_ij). Uncorrelated:
// c_j uniform on [0, 1000]. Weakly correlated: c_j = round(sum_i a_ij / m) + xi
// with xi uniform on [-100, 100], clamped at 0. Variables are binary. Draws
// come from std::mt19937_64 seeded with spec.seed, A row by row, then c.
Problem Generate(const GenSpec& spec);

enum class SolverKind { kPsa, kBranchAndBound, kBruteForce };

std::string SolverName(SolverKind solver);
// Accepts "psa", "bb", "brute". Throws InputError.
SolverKind ParseSolver(std::string_view text);

struct BatchLimits {
  SearchConfig search;
  BranchAndBoundOptions branch_and_bound;
  std::int64_t max_points = 10'000'000;  // brute-force enumeration cap
};

struct ReportRow {
  int n = 0;
  int m = 0;
  std::string corr;
  std::uint64_t seed = 0;
  SolverKind solver = SolverKind::kPsa;
  // "optimal", "infeasible", or a failure token: "limit", "unbounded",
  // "numerical", "input".
  std::string status;
  std::optional<WideInt> value;
  double time_s = 0.0;
  std::optional<std::int64_t> levels;
  std::optional<double> av_pct;  // first-pass AV% at the final level
  std::optional<std::int64_t> peak_list;
  std::optional<std::int64_t> lp_solves;
  std::optional<std::int64_t> mem_bytes;
  std::string detail;  // failure message

  bool ok() const { return status == "optimal" || status == "infeasible"; }
};

struct RunReport {
  std::vector<ReportRow> rows;
};

// Runs one solver on one instance; never throws for solver failures.
ReportRow RunInstance(const Problem& problem, const GenSpec& label,
                      SolverKind solver, const BatchLimits& limits);

// One row per (spec, solver), in spec order then solver order.
RunReport RunBatch(std::span<const GenSpec> specs,
                   std::span<const SolverKind> solvers,
                   const BatchLimits& limits = {});

// Averages per (n, m, corr, solver) over rows that finished.
struct CombinationSummary {
  int n = 0;
  int m = 0;
  std::string corr;
  SolverKind solver = SolverKind::kPsa;
  int instances = 0;
  int finished = 0;
  double avg_time_s = 0.0;
  std::optional<double> avg_levels;
  std::optional<double> avg_av_pct;
};

std::vector<CombinationSummary> Summarize(const RunReport& report);

enum class ReportFormat { kCsv, kTable };

// Columns: n,m,corr,seed,solver,status,value,time_s,levels,av_pct,peak_list,
// lp_solves,mem_bytes. Missing values are empty (CSV) or "-" (table). The
// table format appends the per-combination averages.
std::string EmitReport(const RunReport& report, ReportFormat format);

// Batch description with columns n,m,alpha,corr,seed and optional count; a
// row with count k expands to seeds seed..seed+k-1. A header line naming the
// columns is required. Throws InputError with the offending line.
std::vector<GenSpec> ParseSpecCsv(std::string_view text);

struct VerifyReport {
  int instances = 0;
  std::vector<std::string> mismatches;
};

// Solves `count` generated instances with every solver and lists the
// instances where status or optimal value disagree.
VerifyReport Verify(const GenSpec& base, int count,
                    const BatchLimits& limits = {});

}  // namespace psplit

#endif  // PSPLIT_BENCH_H_
