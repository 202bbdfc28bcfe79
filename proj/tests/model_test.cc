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

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "psplit/errors.h"
#include "psplit/model.h"
#include "psplit/oracle.h"
#include "psplit/search.h"
#include "test_util.h"

namespace psplit {
namespace {

using ::psplit::testing::BoxPoints;
using ::psplit::testing::RandomBoundedInstance;
using ::psplit::testing::Rng;
using ::psplit::testing::Ukp;

constexpr char kUkpText[] = R"(# unbounded knapsack
pilp 3 1
obj 0 9 3 8
row 12 10 5 7
)";

TEST(EvaluateTest, UkpPoints) {
  const Problem p = Ukp();
  EXPECT_EQ(Evaluate(p, {0, 1, 1}), 11);
  EXPECT_EQ(Evaluate(p, {0, 0, 1}), 8);
}

TEST(EvaluateTest, ZeroPointGivesConstant) {
  const Problem p({4, -2}, 17, {});
  EXPECT_EQ(Evaluate(p, {0, 0}), 17);
}

TEST(EvaluateTest, WideFallbackIsExact) {
  constexpr std::int64_t kBig = std::numeric_limits<std::int64_t>::max();
  const Problem p({kBig, kBig, kBig}, kBig, {});
  WideInt expected = WideInt(kBig) * (3 * WideInt(kBig)) + kBig;
  EXPECT_EQ(Evaluate(p, {kBig, kBig, kBig}), expected);
}

TEST(EvaluateTest, DimensionMismatchThrows) {
  EXPECT_THROW(Evaluate(Ukp(), {1, 2}), InputError);
  EXPECT_THROW(IsFeasible(Ukp(), {1, 2}), InputError);
}

TEST(IsFeasibleTest, UkpPoints) {
  const Problem p = Ukp();
  EXPECT_TRUE(IsFeasible(p, {0, 1, 1}));
  EXPECT_FALSE(IsFeasible(p, {1, 1, 1}));
  EXPECT_FALSE(IsFeasible(p, {0, -1, 1}));
}

TEST(IsFeasibleTest, RationalRowsAreExact) {
  // x1/3 + x2/3 <= 2/3
  const Problem p({1, 1}, 0, {LinearRow{{1, 1}, 2, 3}});
  EXPECT_TRUE(IsFeasible(p, {1, 1}));
  EXPECT_FALSE(IsFeasible(p, {2, 1}));
}

TEST(IsFeasibleTest, VarUpperIsChecked) {
  const Problem p({1, 1}, 0, {}, {1, std::nullopt});
  EXPECT_TRUE(IsFeasible(p, {1, 100}));
  EXPECT_FALSE(IsFeasible(p, {2, 0}));
}

TEST(ProblemTest, RowsAreNormalized) {
  const Problem a({1}, 0, {LinearRow{{4}, 6, 2}});
  const Problem b({1}, 0, {LinearRow{{2}, 3, 1}});
  EXPECT_EQ(a, b);
}

TEST(ProblemTest, RejectsBadData) {
  EXPECT_THROW(Problem({1, 2}, 0, {LinearRow{{1}, 1, 1}}), InputError);
  EXPECT_THROW(Problem({1}, 0, {LinearRow{{1}, 1, 0}}), InputError);
  EXPECT_THROW(Problem({1}, 0, {}, {-1}), InputError);
}

TEST(PartialCandidateTest, FixAndInspect) {
  PartialCandidate pc(3, 11);
  EXPECT_EQ(pc.NumActive(), 3);
  pc.Fix(2, 1);
  pc.Fix(0, 0);
  EXPECT_EQ(pc.ToString(), "(0,?,1)");
  EXPECT_EQ(pc.ActiveVars(), std::vector<int>{1});
  EXPECT_FALSE(pc.IsComplete());
  pc.Fix(1, 1);
  EXPECT_TRUE(pc.IsComplete());
  EXPECT_EQ(pc.ToPoint(), IntegerPoint({0, 1, 1}));
  EXPECT_EQ(pc.origin_level(), 11);
  EXPECT_THROW(pc.Fix(0, -2), InputError);
}

TEST(ReduceTest, FixLastVariable) {
  const Problem p = Ukp();
  PartialCandidate pc(3);
  pc.Fix(2, 1);
  const ReducedProblem r = Reduce(p, pc);
  const Problem expected({9, 3}, 8, {LinearRow{{10, 5}, 5, 1}});
  EXPECT_EQ(r.problem(), expected);
  EXPECT_EQ(r.DerivedConstant(), 8);
  EXPECT_TRUE(SameValue(r.DerivedRhs(0), Rational{5, 1}));
  EXPECT_EQ(std::vector<int>(r.active_vars().begin(), r.active_vars().end()),
            (std::vector<int>{0, 1}));
}

TEST(ReduceTest, FixFirstAndLast) {
  PartialCandidate pc(3);
  pc.Fix(0, 0);
  pc.Fix(2, 1);
  const ReducedProblem r = Reduce(Ukp(), pc);
  // 5x2 <= 5 normalizes to x2 <= 1.
  const Problem expected({3}, 8, {LinearRow{{5}, 5, 1}});
  EXPECT_EQ(r.problem(), expected);
  EXPECT_EQ(r.Lift({1}), IntegerPoint({0, 1, 1}));
}

TEST(ReduceTest, EmptyFixingIsIdentity) {
  const Problem p = Ukp();
  EXPECT_EQ(Reduce(p, PartialCandidate(3)).problem(), p);
}

TEST(ReduceTest, CompleteFixingLeavesNoVariables) {
  PartialCandidate pc(3);
  pc.Fix(0, 1);
  pc.Fix(1, 1);
  pc.Fix(2, 1);
  const ReducedProblem r = Reduce(Ukp(), pc);
  EXPECT_EQ(r.problem().num_vars(), 0);
  EXPECT_EQ(r.DerivedConstant(), 20);
  EXPECT_TRUE(SameValue(r.DerivedRhs(0), Rational{-10, 1}));
}

TEST(ReduceTest, BadFixingThrows) {
  EXPECT_THROW(Reduce(Ukp(), PartialCandidate(2)), InputError);
}

TEST(ParseTest, UkpText) {
  const Problem p = ParseInstance(kUkpText);
  EXPECT_EQ(p.num_vars(), 3);
  EXPECT_EQ(p.num_rows(), 1);
  EXPECT_EQ(p, Ukp());
}

TEST(ParseTest, NoRowsWithUpperBounds) {
  const Problem p = ParseInstance("pilp 2 0\nobj 1 2 3\nupper 4 *\n");
  EXPECT_EQ(p.num_rows(), 0);
  EXPECT_EQ(p.var_upper(0), 4);
  EXPECT_EQ(p.var_upper(1), std::nullopt);
}

TEST(ParseTest, RationalEntries) {
  const Problem p = ParseInstance("pilp 2 1\nobj 0 1 1\nrow 3/2 1/2 1/3\n");
  // Scaled to the common denominator 6: 3x1 + 2x2 <= 9.
  EXPECT_EQ(p.row(0), (LinearRow{{3, 2}, 9, 6}));
  EXPECT_TRUE(IsFeasible(p, {3, 0}));
  EXPECT_FALSE(IsFeasible(p, {3, 1}));
}

TEST(ParseTest, NonIntegerObjective) {
  try {
    ParseInstance("pilp 2 0\nobj 0 2.5 1\n");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("non-integer objective coefficient"),
              std::string::npos);
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 7);
  }
}

TEST(ParseTest, Errors) {
  EXPECT_THROW(ParseInstance(""), InputError);
  EXPECT_THROW(ParseInstance("pilp 2 1\nobj 0 1 1\n"), InputError);
  EXPECT_THROW(ParseInstance("pilp 2 1\nobj 0 1\nrow 1 1 1\n"), InputError);
  EXPECT_THROW(ParseInstance("pilp 1 1\nobj 0 1\nrow 1 1e3\n"), InputError);
  EXPECT_THROW(ParseInstance("pilp 1 1\nobj 0 1\nrow 1 1/0\n"), InputError);
  EXPECT_THROW(ParseInstance("pilp 1 0\nobj 0 1\nobj 0 1\n"), InputError);
  EXPECT_THROW(ParseInstance("pilp 1 0\nobj 0 1\nfoo 1\n"), InputError);
  EXPECT_THROW(ParseInstance("pilp 1 0\nobj 0 1\nupper -1\n"), InputError);
  EXPECT_THROW(ParseInstance("pilp 1 0\nobj 0 99999999999999999999\n"),
               InputError);
}

TEST(ParseTest, RoundTripProperty) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const Problem p = RandomBoundedInstance(seed, static_cast<int>(rng.Int(1, 7)),
                                            static_cast<int>(rng.Int(0, 4)));
    const std::string text = SerializeInstance(p);
    const Problem q = ParseInstance(text);
    ASSERT_EQ(p, q) << text;
    ASSERT_EQ(SerializeInstance(q), text);
  }
}

TEST(ReduceTest, FeasibilityEquivalenceProperty) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(seed + 1000);
    const int n = static_cast<int>(rng.Int(1, 5));
    const Problem p = RandomBoundedInstance(seed, n, static_cast<int>(rng.Int(1, 3)), 3);
    PartialCandidate pc(n);
    for (int j = 0; j < n; ++j) {
      if (rng.Coin()) pc.Fix(j, rng.Int(0, *p.var_upper(j)));
    }
    const ReducedProblem r = Reduce(p, pc);
    std::vector<std::int64_t> box;
    for (int j : r.active_vars()) box.push_back(*p.var_upper(j));
    for (const IntegerPoint& y : BoxPoints(box)) {
      const IntegerPoint x = r.Lift(y);
      ASSERT_EQ(IsFeasible(p, x), IsFeasible(r.problem(), y))
          << "seed " << seed << " x " << x.ToString();
      ASSERT_EQ(Evaluate(p, x), Evaluate(r.problem(), y));
    }
  }
}

TEST(ReduceTest, CompositionProperty) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed + 7);
    const int n = static_cast<int>(rng.Int(2, 7));
    const Problem p = RandomBoundedInstance(seed, n, static_cast<int>(rng.Int(1, 4)));
    PartialCandidate first(n);
    PartialCandidate both(n);
    for (int j = 0; j < n; ++j) {
      if (rng.Coin(0.4)) {
        const std::int64_t v = rng.Int(0, 3);
        first.Fix(j, v);
        both.Fix(j, v);
      }
    }
    const ReducedProblem r1 = Reduce(p, first);
    PartialCandidate second(r1.problem().num_vars());
    for (int k = 0; k < second.size(); ++k) {
      if (rng.Coin(0.5)) {
        const std::int64_t v = rng.Int(0, 3);
        second.Fix(k, v);
        both.Fix(r1.active_vars()[k], v);
      }
    }
    const ReducedProblem r2 = Reduce(r1.problem(), second);
    const ReducedProblem direct = Reduce(p, both);
    ASSERT_EQ(r2.DerivedConstant(), direct.DerivedConstant());
    for (int i = 0; i < p.num_rows(); ++i) {
      ASSERT_TRUE(SameValue(r2.DerivedRhs(i), direct.DerivedRhs(i)));
    }
    ASSERT_EQ(r2.problem(), direct.problem());
  }
}

TEST(ProblemTest, VarUpperMatchesExplicitRows) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Problem p = RandomBoundedInstance(seed, 5, 2, 3);
    std::vector<LinearRow> rows = p.rows();
    for (int j = 0; j < p.num_vars(); ++j) {
      LinearRow bound{std::vector<std::int64_t>(p.num_vars(), 0),
                      *p.var_upper(j), 1};
      bound.coefficients[j] = 1;
      rows.push_back(bound);
    }
    const Problem q(std::vector<std::int64_t>(p.objective().begin(),
                                              p.objective().end()),
                    p.constant(), rows);
    const Outcome a = Solve(p);
    const Outcome b = Solve(q);
    ASSERT_EQ(a.status, b.status) << "seed " << seed;
    ASSERT_EQ(a.value, b.value) << "seed " << seed;
    const OracleResult brute = BruteForce(q);
    ASSERT_EQ(a.status == SearchStatus::kOptimal,
              brute.status == OracleStatus::kOptimal);
  }
}

}  // namespace
}  // namespace psplit
