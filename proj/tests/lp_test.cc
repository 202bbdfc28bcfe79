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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "gtest/gtest.h"
#include "lp_oracle.h"
#include "psplit/lp.h"
#include "test_util.h"

namespace psplit::lp {
namespace {

using ::psplit::testing::RandomLp;
using ::psplit::testing::Rng;
using ::psplit::testing::VertexOptimum;

LpModel UkpRelaxation() {
  LpModel model;
  model.objective = {9, 3, 8};
  model.constraints = DenseMatrix(1, 3);
  model.constraints(0, 0) = 10;
  model.constraints(0, 1) = 5;
  model.constraints(0, 2) = 7;
  model.rhs = {12};
  return model;
}

TEST(SolveTest, UkpRelaxation) {
  const LpSolution sol = Solve(UkpRelaxation());
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.value, 96.0 / 7.0, 1e-9);
  EXPECT_NEAR(sol.point[0], 0.0, 1e-9);
  EXPECT_NEAR(sol.point[1], 0.0, 1e-9);
  EXPECT_NEAR(sol.point[2], 12.0 / 7.0, 1e-9);
}

TEST(SolveTest, MaximizeSingleVariable) {
  LpModel model = UkpRelaxation();
  model.objective = {1, 0, 0};
  const LpSolution sol = Solve(model);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.value, 1.2, 1e-9);
}

TEST(SolveTest, ZeroObjectiveGivesConstant) {
  LpModel model = UkpRelaxation();
  model.objective = {0, 0, 0};
  model.objective_constant = 4.5;
  const LpSolution sol = Solve(model);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_DOUBLE_EQ(sol.value, 4.5);
}

TEST(SolveTest, InfeasibleHasCertificate) {
  LpModel model;
  model.objective = {1};
  model.constraints = DenseMatrix(1, 1);
  model.rhs = {-1};  // 0 x <= -1
  const LpSolution sol = Solve(model);
  EXPECT_EQ(sol.status, LpStatus::kInfeasible);
  EXPECT_GT(sol.infeasibility, 0.0);
}

TEST(SolveTest, UnboundedHasRay) {
  LpModel model;
  model.objective = {1, 1};
  model.constraints = DenseMatrix(1, 2);
  model.constraints(0, 0) = 1;
  model.constraints(0, 1) = -1;
  model.rhs = {2};
  const LpSolution sol = Solve(model);
  ASSERT_EQ(sol.status, LpStatus::kUnbounded);
  ASSERT_EQ(sol.ray.size(), 2u);
  EXPECT_GT(sol.ray[0] + sol.ray[1], 0.0);
  EXPECT_LE(sol.ray[0] - sol.ray[1], 1e-9);
}

TEST(SolveTest, Minimize) {
  LpModel model = UkpRelaxation();
  model.sense = Sense::kMinimize;
  model.lower = {0, 0, 1};
  const LpSolution sol = Solve(model);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.value, 8.0, 1e-9);
}

TEST(SolveTest, IterationLimitCarriesBound) {
  Rng rng(5);
  LpModel model = RandomLp(rng, 6, 6);
  SimplexOptions options;
  options.max_iterations = 1;
  bool thrown = false;
  for (std::uint64_t seed = 0; seed < 20 && !thrown; ++seed) {
    Rng r(seed);
    model = RandomLp(r, 6, 6);
    try {
      Solve(model, nullptr, options);
    } catch (const LpError& e) {
      EXPECT_EQ(e.kind(), LpError::Kind::kIterationLimit);
      thrown = true;
    }
  }
  EXPECT_TRUE(thrown);
}

TEST(SolveTest, RejectsMalformedModels) {
  LpModel model = UkpRelaxation();
  model.rhs = {1, 2};
  EXPECT_THROW(Solve(model), std::invalid_argument);
  model = UkpRelaxation();
  model.lower = {0, 2, 0};
  model.upper = {1, 1, 1};
  EXPECT_THROW(Solve(model), std::invalid_argument);
}

TEST(ResolveTest, UkpUpperBoundOnX3) {
  const LpModel model = UkpRelaxation();
  const LpSolution sol = Solve(model);
  const BoundResult r = ResolveWithBound(model, sol, 2, BoundChange::kSetUpper, 0);
  EXPECT_EQ(r.status, BoundStatus::kExact);
  EXPECT_NEAR(r.bound, 10.8, 1e-9);
}

TEST(ResolveTest, UkpLowerBoundOnX1) {
  const LpModel model = UkpRelaxation();
  const LpSolution sol = Solve(model);
  const BoundResult r = ResolveWithBound(model, sol, 0, BoundChange::kSetLower, 1);
  EXPECT_EQ(r.status, BoundStatus::kExact);
  EXPECT_NEAR(r.bound, 79.0 / 7.0, 1e-9);
}

TEST(ResolveTest, NonBindingBoundKeepsValue) {
  const LpModel model = UkpRelaxation();
  const LpSolution sol = Solve(model);
  const BoundResult r = ResolveWithBound(model, sol, 2, BoundChange::kSetUpper, 5);
  EXPECT_EQ(r.status, BoundStatus::kExact);
  EXPECT_DOUBLE_EQ(r.bound, sol.value);
  EXPECT_EQ(r.iterations, 0);
}

TEST(ResolveTest, RestrictedInfeasible) {
  const LpModel model = UkpRelaxation();
  const LpSolution sol = Solve(model);
  const BoundResult r = ResolveWithBound(model, sol, 0, BoundChange::kSetLower, 2);
  EXPECT_EQ(r.status, BoundStatus::kRestrictedInfeasible);
}

// Optimum over the vertices of {Ax <= b, lower <= x <= upper}.
TEST(SolveTest, MatchesVertexEnumeration) {
  int compared = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const int n = static_cast<int>(rng.Int(1, 6));
    const int m = static_cast<int>(rng.Int(1, 6));
    const LpModel model = RandomLp(rng, n, m);
    const LpSolution sol = Solve(model);
    const std::optional<double> expected = VertexOptimum(model);
    ASSERT_EQ(sol.status == LpStatus::kOptimal, expected.has_value())
        << "seed " << seed;
    if (!expected) continue;
    ++compared;
    EXPECT_LE(std::abs(sol.value - *expected),
              1e-6 * std::max(1.0, std::abs(*expected)))
        << "seed " << seed;
  }
  EXPECT_GT(compared, 150);
}

TEST(ResolveTest, BoundValidityProperty) {
  int capped = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed + 500);
    const int n = static_cast<int>(rng.Int(1, 6));
    const int m = static_cast<int>(rng.Int(1, 6));
    LpModel model = RandomLp(rng, n, m, /*feasible_origin=*/true);
    const LpSolution sol = Solve(model);
    ASSERT_EQ(sol.status, LpStatus::kOptimal);
    const int var = static_cast<int>(rng.Int(0, n - 1));
    const double x = sol.point[var];
    const bool up = rng.Coin();
    const double value = up ? std::floor(x - 0.5) : std::ceil(x + 0.5);
    const std::int64_t cap = rng.Coin() ? -1 : rng.Int(0, 2);
    const BoundResult r = ResolveWithBound(
        model, sol, var, up ? BoundChange::kSetUpper : BoundChange::kSetLower,
        value, cap);
    LpModel restricted = model;
    restricted.Validate();
    if (up) {
      restricted.upper[var] = std::min(restricted.upper[var], value);
    } else {
      restricted.lower[var] = std::max(restricted.lower[var], value);
    }
    if (restricted.lower[var] > restricted.upper[var]) {
      EXPECT_EQ(r.status, BoundStatus::kRestrictedInfeasible);
      continue;
    }
    const LpSolution cold = Solve(restricted);
    if (r.status == BoundStatus::kRestrictedInfeasible) {
      EXPECT_EQ(cold.status, LpStatus::kInfeasible) << "seed " << seed;
      continue;
    }
    if (r.status == BoundStatus::kValidBound) ++capped;
    if (cold.status != LpStatus::kOptimal) continue;
    const double tol = 1e-7 * std::max(1.0, std::abs(cold.value));
    if (model.sense == Sense::kMaximize) {
      EXPECT_GE(r.bound, cold.value - tol) << "seed " << seed;
    } else {
      EXPECT_LE(r.bound, cold.value + tol) << "seed " << seed;
    }
    if (r.status == BoundStatus::kExact) {
      EXPECT_NEAR(r.bound, cold.value, tol) << "seed " << seed;
    }
  }
  EXPECT_GT(capped, 0);
}

TEST(SolveTest, WarmStartEquivalence) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed + 900);
    const int n = static_cast<int>(rng.Int(1, 6));
    const int m = static_cast<int>(rng.Int(1, 6));
    LpModel model = RandomLp(rng, n, m);
    const LpSolution first = Solve(model);
    if (first.status != LpStatus::kOptimal) continue;
    model.Validate();
    const int var = static_cast<int>(rng.Int(0, n - 1));
    model.upper[var] = std::floor(first.point[var]);
    model.lower[var] = std::min(model.lower[var], model.upper[var]);
    const LpSolution warm = Solve(model, &first.basis);
    const LpSolution cold = Solve(model);
    ASSERT_EQ(warm.status, cold.status) << "seed " << seed;
    if (cold.status == LpStatus::kOptimal) {
      EXPECT_NEAR(warm.value, cold.value,
                  1e-7 * std::max(1.0, std::abs(cold.value)))
          << "seed " << seed;
    }
  }
}

TEST(SolveTest, Deterministic) {
  Rng rng(77);
  const LpModel model = RandomLp(rng, 6, 5);
  const LpSolution a = Solve(model);
  const LpSolution b = Solve(model);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.basis, b.basis);
  EXPECT_EQ(a.point, b.point);
}

TEST(BoundProberTest, MatchesResolve) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed + 40);
    const LpModel model = RandomLp(rng, 6, 4, true);
    const LpSolution sol = Solve(model);
    ASSERT_EQ(sol.status, LpStatus::kOptimal);
    const BoundProber prober(model, sol);
    for (int j = 0; j < 6; ++j) {
      const BoundResult a = prober.Probe(j, BoundChange::kSetUpper, 0);
      const BoundResult b =
          ResolveWithBound(model, sol, j, BoundChange::kSetUpper, 0);
      EXPECT_EQ(a.status, b.status);
      EXPECT_DOUBLE_EQ(a.bound, b.bound);
    }
  }
}

}  // namespace
}  // namespace psplit::lp
