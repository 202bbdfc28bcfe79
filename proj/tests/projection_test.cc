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
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "psplit/errors.h"
#include "psplit/model.h"
#include "psplit/oracle.h"
#include "psplit/projection.h"
#include "psplit/search.h"
#include "test_util.h"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace psplit {
namespace {

using ::psplit::testing::RandomBoundedInstance;
using ::psplit::testing::RandomMkp;
using ::psplit::testing::RandomPackingInstance;
using ::psplit::testing::Ukp;

ProjectionOptions Serial() {
  ProjectionOptions options;
  options.policy = ExecutionPolicy::kSerial;
  return options;
}

std::vector<std::int64_t> Values(const Projection& p, std::int64_t z) {
  return Range(p, z).values;
}

TEST(VariableBoundsTest, Ukp) {
  const Problem p = Ukp();
  const DomainBounds x3 = VariableBounds(p, 2);
  EXPECT_NEAR(x3.lower, 0.0, 1e-9);
  EXPECT_NEAR(x3.upper, 12.0 / 7.0, 1e-9);
  const DomainBounds x2 = VariableBounds(p, 1);
  EXPECT_NEAR(x2.upper, 12.0 / 5.0, 1e-9);
}

TEST(VariableBoundsTest, ReducedUkp) {
  PartialCandidate pc(3);
  pc.Fix(2, 1);
  const ReducedProblem r = Reduce(Ukp(), pc);
  const DomainBounds x1 = VariableBounds(r.problem(), 0);
  EXPECT_NEAR(x1.lower, 0.0, 1e-9);
  EXPECT_NEAR(x1.upper, 0.5, 1e-9);
}

TEST(VariableBoundsTest, Errors) {
  const Problem infeasible({1}, 0, {LinearRow{{0}, -1, 1}});
  EXPECT_THROW(VariableBounds(infeasible, 0), RelaxationInfeasible);
  const Problem unbounded({1, 1}, 0, {LinearRow{{1, 0}, 3, 1}});
  EXPECT_THROW(VariableBounds(unbounded, 1), UnboundedRelaxation);
}

TEST(ProjectionValuesAtTest, Ukp) {
  const Problem p = Ukp();
  const auto x3 = ProjectionValuesAt(p, 2, 1);
  ASSERT_TRUE(x3.has_value());
  EXPECT_NEAR(x3->low, 8.0, 1e-9);
  EXPECT_NEAR(x3->up, 12.5, 1e-9);
  const auto x1_0 = ProjectionValuesAt(p, 0, 0);
  ASSERT_TRUE(x1_0.has_value());
  EXPECT_NEAR(x1_0->low, 0.0, 1e-9);
  EXPECT_NEAR(x1_0->up, 96.0 / 7.0, 1e-9);
  const auto x1_1 = ProjectionValuesAt(p, 0, 1);
  ASSERT_TRUE(x1_1.has_value());
  EXPECT_NEAR(x1_1->low, 9.0, 1e-9);
  EXPECT_NEAR(x1_1->up, 79.0 / 7.0, 1e-9);
  EXPECT_FALSE(ProjectionValuesAt(p, 0, 2).has_value());
  EXPECT_FALSE(ProjectionValuesAt(p, 0, -1).has_value());
}

TEST(BuildExactTest, UkpClosedForms) {
  const std::vector<Projection> pr = BuildProjectionsExact(Ukp(), Serial());
  ASSERT_EQ(pr.size(), 3u);
  // P1: 9e <= z <= -17/7 e + 96/7 on [0, 1].
  ASSERT_EQ(pr[0].points.size(), 2u);
  // P2: 3e <= z <= -19/7 e + 96/7 on [0, 2].
  ASSERT_EQ(pr[1].points.size(), 3u);
  // P3: 8e <= z <= 17/10 e + 108/10 on [0, 1].
  ASSERT_EQ(pr[2].points.size(), 2u);
  for (const ProjectionPoint& pt : pr[0].points) {
    const double e = static_cast<double>(pt.abscissa);
    EXPECT_NEAR(pt.low, 9 * e, 1e-9);
    EXPECT_NEAR(pt.up, -17.0 / 7.0 * e + 96.0 / 7.0, 1e-9);
    EXPECT_TRUE(pt.low_exact && pt.up_exact);
  }
  for (const ProjectionPoint& pt : pr[1].points) {
    const double e = static_cast<double>(pt.abscissa);
    EXPECT_NEAR(pt.low, 3 * e, 1e-9);
    EXPECT_NEAR(pt.up, -19.0 / 7.0 * e + 96.0 / 7.0, 1e-9);
  }
  for (const ProjectionPoint& pt : pr[2].points) {
    const double e = static_cast<double>(pt.abscissa);
    EXPECT_NEAR(pt.low, 8 * e, 1e-9);
    EXPECT_NEAR(pt.up, 1.7 * e + 10.8, 1e-9);
  }
  EXPECT_NEAR(pr[2].upper_end, 12.0 / 7.0, 1e-9);
}

TEST(BuildExactTest, SingleVariable) {
  const Problem p({9}, 0, {LinearRow{{10}, 12, 1}});
  const std::vector<Projection> pr = BuildProjectionsExact(p);
  ASSERT_EQ(pr[0].points.size(), 2u);
  EXPECT_EQ(pr[0].points[0].abscissa, 0);
  EXPECT_NEAR(pr[0].points[0].low, 0.0, 1e-12);
  EXPECT_NEAR(pr[0].points[0].up, 0.0, 1e-12);
  EXPECT_EQ(pr[0].points[1].abscissa, 1);
  EXPECT_NEAR(pr[0].points[1].low, 9.0, 1e-12);
  EXPECT_NEAR(pr[0].points[1].up, 9.0, 1e-12);
}

TEST(BuildExactTest, Errors) {
  const Problem infeasible({1}, 0, {LinearRow{{0}, -1, 1}});
  EXPECT_THROW(BuildProjectionsExact(infeasible), RelaxationInfeasible);
  ProjectionOptions options;
  options.max_domain_points = 2;
  EXPECT_THROW(BuildProjectionsExact(Ukp(), options), ResourceLimit);
}

TEST(RangeTest, UkpLevels) {
  const std::vector<Projection> pr = BuildProjectionsExact(Ukp());
  EXPECT_TRUE(Values(pr[2], 13).empty());
  EXPECT_EQ(Values(pr[2], 12), std::vector<std::int64_t>{1});
  EXPECT_EQ(Values(pr[0], 12), std::vector<std::int64_t>{0});
  EXPECT_EQ(Values(pr[1], 12), std::vector<std::int64_t>{0});
  EXPECT_EQ(Values(pr[0], 11), (std::vector<std::int64_t>{0, 1}));
  EXPECT_EQ(Values(pr[1], 11), (std::vector<std::int64_t>{0, 1}));
  EXPECT_EQ(Values(pr[2], 11), std::vector<std::int64_t>{1});
  const RangeSet r = Range(pr[1], 11);
  EXPECT_EQ(r.var, 1);
  EXPECT_EQ(r.level, 11);
}

TEST(TwoPhaseTest, RejectsNonBinary) {
  EXPECT_THROW(BuildProjectionsTwoPhase(Ukp()), InputError);
}

TEST(TwoPhaseTest, SmallKnapsackMatchesExact) {
  // max 5x1 + 4x2 s.t. 3x1 + 2x2 <= 4, x binary.
  const Problem p({5, 4}, 0, {LinearRow{{3, 2}, 4, 1}}, {1, 1});
  const std::vector<Projection> exact = BuildProjectionsExact(p);
  ProjectionStats stats;
  const std::vector<Projection> fast = BuildProjectionsTwoPhase(p, {}, &stats);
  EXPECT_EQ(stats.lp_solves, 1);
  EXPECT_GT(stats.dual_resolves, 0);
  for (int j = 0; j < 2; ++j) {
    ASSERT_EQ(fast[j].points.size(), exact[j].points.size());
    for (std::size_t k = 0; k < exact[j].points.size(); ++k) {
      const ProjectionPoint& a = fast[j].points[k];
      const ProjectionPoint& b = exact[j].points[k];
      EXPECT_EQ(a.abscissa, b.abscissa);
      EXPECT_TRUE(a.up_exact && a.low_exact);
      EXPECT_NEAR(a.up, b.up, 1e-9);
      EXPECT_NEAR(a.low, b.low, 1e-9);
    }
  }
  // The relaxation optimum is x* = (2/3, 1): x2 is integral, so up_2(1) is
  // the LP value 22/3.
  EXPECT_NEAR(fast[1].Find(1)->up, 22.0 / 3.0, 1e-9);
  EXPECT_NEAR(fast[1].Find(0)->up, 5.0, 1e-9);
  EXPECT_NEAR(fast[0].Find(1)->up, 7.0, 1e-9);
  EXPECT_NEAR(fast[0].Find(0)->up, 4.0, 1e-9);
}

TEST(TwoPhaseTest, FullyFractionalOptimum) {
  // x* = (1/2, 1/2): both upper values at both abscissae need re-solves.
  const Problem p({2, 2}, 0,
                  {LinearRow{{2, 0}, 1, 1}, LinearRow{{0, 2}, 1, 1}}, {1, 1});
  const std::vector<Projection> exact = BuildProjectionsExact(p);
  ProjectionStats stats;
  const std::vector<Projection> fast = BuildProjectionsTwoPhase(p, {}, &stats);
  EXPECT_EQ(stats.lp_solves, 1);
  EXPECT_EQ(stats.dual_resolves, 4);
  for (int j = 0; j < 2; ++j) {
    ASSERT_EQ(fast[j].points.size(), 1u);
    EXPECT_NEAR(fast[j].points[0].up, exact[j].points[0].up, 1e-9);
  }
}

TEST(TwoPhaseTest, SafetyOnRandomMkp) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Problem p = RandomMkp(seed, 8, 3);
    const std::vector<Projection> exact = BuildProjectionsExact(p);
    for (std::int64_t cap : {-1, 0, 1}) {
      ProjectionOptions options;
      options.iter_cap = cap;
      const std::vector<Projection> fast = BuildProjectionsTwoPhase(p, options);
      for (int j = 0; j < 8; ++j) {
        for (const ProjectionPoint& e : exact[j].points) {
          const ProjectionPoint* f = fast[j].Find(e.abscissa);
          ASSERT_NE(f, nullptr);
          EXPECT_GE(f->up, e.up - 1e-7) << "seed " << seed << " j " << j;
          EXPECT_LE(f->low, e.low + 1e-7) << "seed " << seed << " j " << j;
          if (cap < 0) EXPECT_NEAR(f->up, e.up, 1e-7);
        }
      }
    }
  }
}

TEST(TwoPhaseTest, MinimizingLowerSide) {
  // Negative objective coefficients rule out the closed-form lower values.
  const Problem p({4, -3, 5}, 2,
                  {LinearRow{{2, 1, 3}, 4, 1}, LinearRow{{-1, 2, 1}, 2, 1}},
                  {1, 1, 1});
  const std::vector<Projection> exact = BuildProjectionsExact(p);
  const std::vector<Projection> fast = BuildProjectionsTwoPhase(p);
  for (int j = 0; j < 3; ++j) {
    for (const ProjectionPoint& e : exact[j].points) {
      const ProjectionPoint* f = fast[j].Find(e.abscissa);
      ASSERT_NE(f, nullptr);
      EXPECT_NEAR(f->low, e.low, 1e-7);
      EXPECT_NEAR(f->up, e.up, 1e-7);
    }
  }
}

TEST(ProjectionPropertyTest, MonotoneBandAndDomain) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Problem p = seed % 2 == 0 ? RandomBoundedInstance(seed, 5, 3)
                                    : RandomPackingInstance(seed, 5, 2);
    std::vector<Projection> pr;
    try {
      pr = BuildProjectionsExact(p);
    } catch (const RelaxationInfeasible&) {
      continue;
    }
    for (const Projection& proj : pr) {
      EXPECT_LE(proj.lower_end, proj.upper_end + 1e-6);
      const auto [lo, hi] =
          IntegerDomain({proj.lower_end, proj.upper_end}, 1e-6);
      for (const ProjectionPoint& pt : proj.points) {
        EXPECT_LE(pt.low, pt.up + 1e-6);
        EXPECT_GE(pt.abscissa, lo);
        EXPECT_LE(pt.abscissa, hi);
      }
      for (std::int64_t z = -60; z <= 120; ++z) {
        for (std::int64_t v : Range(proj, z).values) {
          EXPECT_GE(v, lo);
          EXPECT_LE(v, hi);
        }
      }
    }
  }
}

TEST(ProjectionPropertyTest, LemmaOneSuperset) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Problem p = RandomBoundedInstance(seed, 4, 2, 3);
    std::vector<Projection> pr;
    try {
      pr = BuildProjectionsExact(p);
    } catch (const RelaxationInfeasible&) {
      continue;
    }
    for (const auto& x : testing::BoxPoints(EnumerationBox(p))) {
      if (!IsFeasible(p, x)) continue;
      const auto z = static_cast<std::int64_t>(Evaluate(p, x));
      for (int j = 0; j < p.num_vars(); ++j) {
        const auto values = Range(pr[j], z).values;
        EXPECT_TRUE(std::binary_search(values.begin(), values.end(), x[j]))
            << "seed " << seed << " x " << x.ToString() << " j " << j;
      }
    }
  }
}

TEST(ProjectionPropertyTest, SerialAndParallelAgree) {
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(4);
#endif
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Problem p = RandomMkp(seed, 40, 3);
    ProjectionOptions serial = Serial();
    ProjectionOptions parallel;
    parallel.policy = ExecutionPolicy::kParallel;
    for (ProjectionMode mode : {ProjectionMode::kExact, ProjectionMode::kTwoPhase}) {
      ProjectionStats s1, s2;
      const auto a = BuildProjections(p, mode, serial, &s1);
      const auto b = BuildProjections(p, mode, parallel, &s2);
      EXPECT_EQ(ProjectionsCsv(a), ProjectionsCsv(b));
      EXPECT_EQ(s1.lp_solves, s2.lp_solves);
      EXPECT_EQ(s1.dual_resolves, s2.dual_resolves);
    }
  }
#ifdef _OPENMP
  omp_set_num_threads(saved);
#endif
}

TEST(ProjectionsCsvTest, Format) {
  const std::vector<Projection> pr =
      BuildProjectionsExact(Problem({9}, 0, {LinearRow{{10}, 12, 1}}));
  EXPECT_EQ(ProjectionsCsv(pr),
            "var,e,low,up,low_exact,up_exact\n0,0,0,0,1,1\n0,1,9,9,1,1\n");
}

}  // namespace
}  // namespace psplit
