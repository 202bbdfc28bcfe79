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

// Projections of the objective onto the (x_j, z) planes.
//
// For variable j the projection is the convex region of (x_j, z) pairs
// reachable by the LP relaxation. Only its vertical slices at integer x_j are
// needed: for each integer abscissa e the interval [low(e), up(e)] of objective
// values attainable with x_j = e. Slicing all projections at a level z gives
// the range of integer values each variable may take in a solution of value z.
//
// All floating-point tolerances err on the side of larger ranges: a computed
// range always contains the exact one.

#ifndef PSPLIT_PROJECTION_H_
#define PSPLIT_PROJECTION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psplit/lp.h"
#include "psplit/model.h"
#include "psplit/parallel.h"

namespace psplit {

struct ProjectionPoint {
  std::int64_t abscissa = 0;
  double low = 0.0;
  double up = 0.0;
  bool low_exact = true;  // false: low under-estimates the true value
  bool up_exact = true;   // false: up over-estimates the true value
};

struct Projection {
  int var = 0;
  double lower_end = 0.0;  // min x_j over the relaxation
  double upper_end = 0.0;  // max x_j over the relaxation
  // Increasing abscissae. Abscissae whose slice is empty are absent.
  std::vector<ProjectionPoint> points;

  const ProjectionPoint* Find(std::int64_t abscissa) const;
};

struct RangeSet {
  int var = 0;
  std::int64_t level = 0;
  std::vector<std::int64_t> values;  // sorted, unique

  int size() const { return static_cast<int>(values.size()); }
  bool empty() const { return values.empty(); }
};

enum class ProjectionMode {
  kAuto,      // two-phase for binary problems, exact otherwise
  kExact,     // two LPs per integer abscissa
  kTwoPhase,  // one LP plus dual re-solves; binary problems only
};

struct ProjectionOptions {
  double dom_tol = 1e-6;
  double range_tol = 1e-6;
  // Dual simplex iteration cap for two-phase re-solves; < 0 means none.
  std::int64_t iter_cap = -1;
  // Exact mode refuses problems with more integer abscissae than this.
  std::int64_t max_domain_points = 1'000'000;
  ExecutionPolicy policy = ExecutionPolicy::kParallel;
  lp::SimplexOptions simplex;
};

struct ProjectionStats {
  std::int64_t lp_solves = 0;
  std::int64_t dual_resolves = 0;

  ProjectionStats& operator+=(const ProjectionStats& other) {
    lp_solves += other.lp_solves;
    dual_resolves += other.dual_resolves;
    return *this;
  }
};

struct DomainBounds {
  double lower = 0.0;
  double upper = 0.0;
};

struct ProjectionValues {
  double low = 0.0;
  double up = 0.0;
  bool low_exact = true;
  bool up_exact = true;
};

// LP relaxation of the problem: columns bounded by [0, var_upper].
lp::LpModel RelaxationModel(const Problem& problem,
                            lp::Sense sense = lp::Sense::kMaximize);

// min and max of x_j over the relaxation. Throws RelaxationInfeasible or
// UnboundedRelaxation.
DomainBounds VariableBounds(const Problem& problem, int var,
                            const ProjectionOptions& options = {},
                            ProjectionStats* stats = nullptr);

// Objective range over the relaxation with x_j fixed to value; nullopt when
// that slice is empty.
std::optional<ProjectionValues> ProjectionValuesAt(
    const Problem& problem, int var, std::int64_t value,
    const ProjectionOptions& options = {}, ProjectionStats* stats = nullptr);

// Integer abscissae covered by [lower, upper] after widening by dom_tol.
std::pair<std::int64_t, std::int64_t> IntegerDomain(const DomainBounds& bounds,
                                                    double dom_tol);

// Every slice solved exactly with two cold LPs. Throws RelaxationInfeasible,
// UnboundedRelaxation, or ResourceLimit when the domains exceed
// max_domain_points.
std::vector<Projection> BuildProjectionsExact(
    const Problem& problem, const ProjectionOptions& options = {},
    ProjectionStats* stats = nullptr);

// Binary problems only (InputError otherwise). One LP for the maximum; every
// upper value not settled by an integral coordinate of its optimum comes from
// a dual simplex re-solve after forcing x_j <= 0 or x_j >= 1. Lower values use
// c_j e + h when A, b and c are nonnegative, and the same scheme on the
// minimization otherwise. The reported lower_end/upper_end are the smallest
// and largest feasible abscissae.
std::vector<Projection> BuildProjectionsTwoPhase(
    const Problem& problem, const ProjectionOptions& options = {},
    ProjectionStats* stats = nullptr);

std::vector<Projection> BuildProjections(const Problem& problem,
                                         ProjectionMode mode,
                                         const ProjectionOptions& options = {},
                                         ProjectionStats* stats = nullptr);

// Range of x_j at level z: abscissae e with low(e) <= z + t and
// up(e) >= z - t, where t = range_tol * max(1, |z|).
RangeSet Range(const Projection& projection, std::int64_t level,
               double range_tol = 1e-6);

// CSV with header "var,e,low,up,low_exact,up_exact".
std::string ProjectionsCsv(const std::vector<Projection>& projections);

}  // namespace psplit

#endif  // PSPLIT_PROJECTION_H_
