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

#include "psplit/projection.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "psplit/errors.h"

namespace psplit {
namespace {

lp::LpSolution SolveChecked(const lp::LpModel& model,
                            const ProjectionOptions& options,
                            const std::string& what) {
  lp::LpSolution solution = lp::Solve(model, nullptr, options.simplex);
  if (solution.status == lp::LpStatus::kUnbounded) {
    throw UnboundedRelaxation("LP relaxation is unbounded (" + what + ")");
  }
  return solution;
}

void CheckVar(const Problem& problem, int var) {
  if (var < 0 || var >= problem.num_vars()) {
    throw InputError("variable index " + std::to_string(var) +
                     " out of range");
  }
}

// Zero completions stay feasible and the minimum of c'x + h with x_j = e is
// attained with every other variable at zero.
bool HasClosedFormLower(const Problem& problem) {
  for (std::int64_t c : problem.objective()) {
    if (c < 0) return false;
  }
  for (const LinearRow& row : problem.rows()) {
    if (row.rhs < 0) return false;
    for (std::int64_t a : row.coefficients) {
      if (a < 0) return false;
    }
  }
  return true;
}

std::string FormatDouble(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::to_string(v);
}

// Outcome of one forced-bound re-solve.
struct Slice {
  bool feasible = false;
  double value = 0.0;
  bool exact = true;
};

// For each variable, the two values of `sense` optimum with x_j forced to 0
// and to 1: settled from the LP optimum where x_j is already integral, by a
// dual re-solve otherwise.
std::vector<std::array<Slice, 2>> BinarySlices(
    const lp::LpModel& model, const lp::LpSolution& optimum,
    const ProjectionOptions& options, ProjectionStats& stats,
    const std::vector<std::array<bool, 2>>* wanted) {
  const int n = model.num_cols();
  const double tol = options.simplex.feas_tol;
  std::vector<std::array<Slice, 2>> slices(n);
  std::vector<std::pair<int, int>> tasks;
  for (int j = 0; j < n; ++j) {
    for (int e = 0; e < 2; ++e) {
      if (wanted != nullptr && !(*wanted)[j][e]) continue;
      if (std::abs(optimum.point[j] - e) <= tol) {
        slices[j][e] = {true, optimum.value, true};
      } else {
        tasks.emplace_back(j, e);
      }
    }
  }
  const lp::BoundProber prober(model, optimum, options.simplex);
  ParallelFor(static_cast<std::int64_t>(tasks.size()), options.policy,
              [&](std::int64_t t) {
                const auto [j, e] = tasks[t];
                const lp::BoundResult r =
                    e == 0 ? prober.Probe(j, lp::BoundChange::kSetUpper, 0.0,
                                          options.iter_cap)
                           : prober.Probe(j, lp::BoundChange::kSetLower, 1.0,
                                          options.iter_cap);
                Slice& slice = slices[j][e];
                slice.feasible =
                    r.status != lp::BoundStatus::kRestrictedInfeasible;
                slice.value = r.bound;
                slice.exact = r.status == lp::BoundStatus::kExact;
              });
  stats.dual_resolves += static_cast<std::int64_t>(tasks.size());
  return slices;
}

}  // namespace

const ProjectionPoint* Projection::Find(std::int64_t abscissa) const {
  const auto it = std::lower_bound(
      points.begin(), points.end(), abscissa,
      [](const ProjectionPoint& p, std::int64_t e) { return p.abscissa < e; });
  return it != points.end() && it->abscissa == abscissa ? &*it : nullptr;
}

lp::LpModel RelaxationModel(const Problem& problem, lp::Sense sense) {
  const int n = problem.num_vars();
  const int m = problem.num_rows();
  lp::LpModel model;
  model.sense = sense;
  model.objective.resize(n);
  for (int j = 0; j < n; ++j) {
    model.objective[j] = static_cast<double>(problem.objective(j));
  }
  model.objective_constant = static_cast<double>(problem.constant());
  model.constraints = lp::DenseMatrix(m, n);
  model.rhs.resize(m);
  for (int i = 0; i < m; ++i) {
    const LinearRow& row = problem.row(i);
    const double den = static_cast<double>(row.denominator);
    for (int j = 0; j < n; ++j) {
      if (row.coefficients[j] != 0) {
        model.constraints(i, j) = static_cast<double>(row.coefficients[j]) / den;
      }
    }
    model.rhs[i] = static_cast<double>(row.rhs) / den;
  }
  model.lower.assign(n, 0.0);
  model.upper.assign(n, lp::kInfinity);
  for (int j = 0; j < n; ++j) {
    if (const auto u = problem.var_upper(j)) {
      model.upper[j] = static_cast<double>(*u);
    }
  }
  return model;
}

DomainBounds VariableBounds(const Problem& problem, int var,
                            const ProjectionOptions& options,
                            ProjectionStats* stats) {
  CheckVar(problem, var);
  lp::LpModel model = RelaxationModel(problem);
  std::fill(model.objective.begin(), model.objective.end(), 0.0);
  model.objective[var] = 1.0;
  model.objective_constant = 0.0;
  const std::string what = "x_" + std::to_string(var);
  model.sense = lp::Sense::kMinimize;
  const lp::LpSolution low = SolveChecked(model, options, what);
  if (stats != nullptr) ++stats->lp_solves;
  if (low.status == lp::LpStatus::kInfeasible) throw RelaxationInfeasible();
  model.sense = lp::Sense::kMaximize;
  const lp::LpSolution high = SolveChecked(model, options, what);
  if (stats != nullptr) ++stats->lp_solves;
  if (high.status == lp::LpStatus::kInfeasible) throw RelaxationInfeasible();
  return {low.value, high.value};
}

std::optional<ProjectionValues> ProjectionValuesAt(
    const Problem& problem, int var, std::int64_t value,
    const ProjectionOptions& options, ProjectionStats* stats) {
  CheckVar(problem, var);
  if (value < 0) return std::nullopt;
  if (const auto u = problem.var_upper(var); u && value > *u) {
    return std::nullopt;
  }
  lp::LpModel model = RelaxationModel(problem);
  model.lower[var] = model.upper[var] = static_cast<double>(value);
  const std::string what = "x_" + std::to_string(var) + " fixed";
  const lp::LpSolution up = SolveChecked(model, options, what);
  if (stats != nullptr) ++stats->lp_solves;
  if (up.status == lp::LpStatus::kInfeasible) return std::nullopt;
  model.sense = lp::Sense::kMinimize;
  const lp::LpSolution low = SolveChecked(model, options, what);
  if (stats != nullptr) ++stats->lp_solves;
  if (low.status == lp::LpStatus::kInfeasible) return std::nullopt;
  return ProjectionValues{low.value, up.value, true, true};
}

std::pair<std::int64_t, std::int64_t> IntegerDomain(const DomainBounds& bounds,
                                                    double dom_tol) {
  const double lo = std::ceil(bounds.lower - dom_tol);
  const double hi = std::floor(bounds.upper + dom_tol);
  return {std::max<std::int64_t>(0, static_cast<std::int64_t>(lo)),
          static_cast<std::int64_t>(hi)};
}

std::vector<Projection> BuildProjectionsExact(const Problem& problem,
                                              const ProjectionOptions& options,
                                              ProjectionStats* stats) {
  const int n = problem.num_vars();
  ProjectionStats local;
  {
    const lp::LpSolution root =
        SolveChecked(RelaxationModel(problem), options, "objective");
    ++local.lp_solves;
    if (root.status == lp::LpStatus::kInfeasible) throw RelaxationInfeasible();
  }
  std::vector<Projection> projections(n);
  std::vector<ProjectionStats> per_var(n);
  ParallelFor(n, options.policy, [&](std::int64_t j) {
    const int var = static_cast<int>(j);
    const DomainBounds b = VariableBounds(problem, var, options, &per_var[j]);
    projections[j].var = var;
    projections[j].lower_end = b.lower;
    projections[j].upper_end = b.upper;
  });

  struct Task {
    int var;
    std::int64_t abscissa;
  };
  std::vector<Task> tasks;
  std::int64_t total = 0;
  for (int j = 0; j < n; ++j) {
    const auto [lo, hi] = IntegerDomain(
        {projections[j].lower_end, projections[j].upper_end}, options.dom_tol);
    if (hi >= lo) total += hi - lo + 1;
    if (total > options.max_domain_points) {
      throw ResourceLimit("exact projections need more than " +
                          std::to_string(options.max_domain_points) +
                          " integer abscissae; use two-phase projections");
    }
    for (std::int64_t e = lo; e <= hi; ++e) tasks.push_back({j, e});
  }
  std::vector<std::optional<ProjectionValues>> values(tasks.size());
  std::vector<ProjectionStats> per_task(tasks.size());
  ParallelFor(static_cast<std::int64_t>(tasks.size()), options.policy,
              [&](std::int64_t t) {
                values[t] = ProjectionValuesAt(problem, tasks[t].var,
                                               tasks[t].abscissa, options,
                                               &per_task[t]);
              });
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    if (!values[t]) continue;
    const ProjectionValues& v = *values[t];
    projections[tasks[t].var].points.push_back(
        {tasks[t].abscissa, v.low, v.up, v.low_exact, v.up_exact});
  }
  for (const auto& s : per_var) local += s;
  for (const auto& s : per_task) local += s;
  if (stats != nullptr) *stats += local;
  return projections;
}

std::vector<Projection> BuildProjectionsTwoPhase(
    const Problem& problem, const ProjectionOptions& options,
    ProjectionStats* stats) {
  if (!problem.IsBinary()) {
    throw InputError(
        "two-phase projections need every variable bounded by x_j <= 1");
  }
  const int n = problem.num_vars();
  ProjectionStats local;

  const lp::LpModel max_model = RelaxationModel(problem, lp::Sense::kMaximize);
  const lp::LpSolution max_opt = SolveChecked(max_model, options, "objective");
  ++local.lp_solves;
  if (max_opt.status == lp::LpStatus::kInfeasible) throw RelaxationInfeasible();
  const auto up = BinarySlices(max_model, max_opt, options, local, nullptr);

  std::vector<std::array<bool, 2>> feasible(n);
  for (int j = 0; j < n; ++j) {
    feasible[j] = {up[j][0].feasible, up[j][1].feasible};
  }
  std::vector<std::array<Slice, 2>> low(n);
  if (HasClosedFormLower(problem)) {
    const double h = static_cast<double>(problem.constant());
    for (int j = 0; j < n; ++j) {
      const double c = static_cast<double>(problem.objective(j));
      low[j][0] = {true, h, true};
      low[j][1] = {true, c + h, true};
    }
  } else {
    const lp::LpModel min_model =
        RelaxationModel(problem, lp::Sense::kMinimize);
    const lp::LpSolution min_opt =
        SolveChecked(min_model, options, "objective");
    ++local.lp_solves;
    if (min_opt.status == lp::LpStatus::kInfeasible) {
      throw RelaxationInfeasible();
    }
    low = BinarySlices(min_model, min_opt, options, local, &feasible);
  }

  std::vector<Projection> projections(n);
  for (int j = 0; j < n; ++j) {
    Projection& pr = projections[j];
    pr.var = j;
    for (int e = 0; e < 2; ++e) {
      if (!up[j][e].feasible) continue;
      ProjectionPoint point;
      point.abscissa = e;
      point.up = up[j][e].value;
      point.up_exact = up[j][e].exact;
      if (low[j][e].feasible) {
        point.low = low[j][e].value;
        point.low_exact = low[j][e].exact;
      } else {
        // The two re-solves disagree on feasibility; keep the slice with the
        // weakest lower value.
        point.low = -lp::kInfinity;
        point.low_exact = false;
      }
      pr.points.push_back(point);
    }
    if (pr.points.empty()) {
      pr.lower_end = pr.upper_end = max_opt.point[j];
    } else {
      pr.lower_end = static_cast<double>(pr.points.front().abscissa);
      pr.upper_end = static_cast<double>(pr.points.back().abscissa);
    }
  }
  if (stats != nullptr) *stats += local;
  return projections;
}

std::vector<Projection> BuildProjections(const Problem& problem,
                                         ProjectionMode mode,
                                         const ProjectionOptions& options,
                                         ProjectionStats* stats) {
  switch (mode) {
    case ProjectionMode::kExact:
      return BuildProjectionsExact(problem, options, stats);
    case ProjectionMode::kTwoPhase:
      return BuildProjectionsTwoPhase(problem, options, stats);
    case ProjectionMode::kAuto:
      break;
  }
  return problem.IsBinary() ? BuildProjectionsTwoPhase(problem, options, stats)
                            : BuildProjectionsExact(problem, options, stats);
}

RangeSet Range(const Projection& projection, std::int64_t level,
               double range_tol) {
  RangeSet range;
  range.var = projection.var;
  range.level = level;
  const double z = static_cast<double>(level);
  const double tol = range_tol * std::max(1.0, std::abs(z));
  for (const ProjectionPoint& p : projection.points) {
    if (p.low <= z + tol && p.up >= z - tol) range.values.push_back(p.abscissa);
  }
  return range;
}

std::string ProjectionsCsv(const std::vector<Projection>& projections) {
  std::string out = "var,e,low,up,low_exact,up_exact\n";
  for (const Projection& pr : projections) {
    for (const ProjectionPoint& p : pr.points) {
      out += std::to_string(pr.var) + ',' + std::to_string(p.abscissa) + ',' +
             FormatDouble(p.low) + ',' + FormatDouble(p.up) + ',' +
             (p.low_exact ? '1' : '0') + ',' + (p.up_exact ? '1' : '0') + '\n';
    }
  }
  return out;
}

}  // namespace psplit
