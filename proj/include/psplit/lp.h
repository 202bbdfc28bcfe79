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

// Dense bounded-variable revised simplex.
//
// Models are "maximize/minimize c'x + k  s.t.  A x <= b,  l <= x <= u" with
// finite lower bounds. Internally one slack per row is appended and the basis
// is held as a dense LU factorization plus a product-form eta file that is
// rebuilt every SimplexOptions::refactor_interval pivots.

#ifndef PSPLIT_LP_H_
#define PSPLIT_LP_H_

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace psplit::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { kMaximize, kMinimize };

// Column-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(
      static_cast<std::size_t>(rows) * cols, 0.0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int i, int j) const { return data_[Index(i, j)]; }
  double& operator()(int i, int j) { return data_[Index(i, j)]; }
  std::span<const double> column(int j) const {
    return {data_.data() + static_cast<std::size_t>(j) * rows_,
            static_cast<std::size_t>(rows_)};
  }

 private:
  std::size_t Index(int i, int j) const {
    return static_cast<std::size_t>(j) * rows_ + i;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

struct LpModel {
  Sense sense = Sense::kMaximize;
  std::vector<double> objective;
  double objective_constant = 0.0;
  DenseMatrix constraints;
  std::vector<double> rhs;
  std::vector<double> lower;  // defaults to 0 when left empty
  std::vector<double> upper;  // defaults to +inf when left empty

  int num_cols() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }

  // Fills defaulted bounds and checks dimensions; throws std::invalid_argument.
  void Validate();
};

enum class VarStatus : std::uint8_t { kBasic, kAtLower, kAtUpper };

// Variables are numbered 0..n-1 for the columns and n..n+m-1 for the row
// slacks. basic[i] is the variable basic in row i.
struct Basis {
  std::vector<int> basic;
  std::vector<VarStatus> status;

  bool empty() const { return basic.empty() && status.empty(); }
  friend bool operator==(const Basis&, const Basis&) = default;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> point;  // column values
  double value = 0.0;         // objective including the constant
  Basis basis;
  std::int64_t iterations = 0;
  // Sum of bound violations at the end of phase one; positive when
  // status == kInfeasible.
  double infeasibility = 0.0;
  // Improving direction over the columns when status == kUnbounded.
  std::vector<double> ray;
};

struct SimplexOptions {
  double feas_tol = 1e-7;
  double opt_tol = 1e-7;
  double pivot_tol = 1e-9;
  int refactor_interval = 50;
  // 0 selects 100 * (n + m) + 1000.
  std::int64_t max_iterations = 0;
  // 0 selects 3 * (n + m) consecutive degenerate pivots before Bland's rule.
  std::int64_t bland_after = 0;
};

class LpError : public std::runtime_error {
 public:
  enum class Kind { kIterationLimit, kNumericalBreakdown };

  LpError(Kind kind, const std::string& what, double best_bound)
      : std::runtime_error(what), kind_(kind), best_bound_(best_bound) {}

  Kind kind() const { return kind_; }
  // Objective of the last basic solution visited (in the model's sense).
  double best_bound() const { return best_bound_; }

 private:
  Kind kind_;
  double best_bound_;
};

// Solves the model. A warm basis is used when it factorizes; the dual simplex
// runs when it is dual feasible, the primal simplex otherwise. A warm basis
// that cannot be used falls back to the slack basis.
LpSolution Solve(const LpModel& model, const Basis* warm = nullptr,
                 const SimplexOptions& options = {});

enum class BoundChange { kSetUpper, kSetLower };

enum class BoundStatus {
  kExact,                // dual simplex reached optimality
  kValidBound,           // stopped by the iteration cap; bound over-estimates
                         // a maximum (under-estimates a minimum)
  kRestrictedInfeasible  // the tightened LP has no feasible point
};

struct BoundResult {
  double bound = 0.0;
  BoundStatus status = BoundStatus::kExact;
  std::int64_t iterations = 0;
};

// Re-solves a model after tightening one variable bound, with the dual simplex
// started from an optimal solution. iter_cap < 0 means no cap.
BoundResult ResolveWithBound(const LpModel& model, const LpSolution& solution,
                             int var, BoundChange change, double value,
                             std::int64_t iter_cap = -1,
                             const SimplexOptions& options = {});

// Repeated ResolveWithBound calls against one optimal solution. The optimal
// state is factorized once and each probe works on a private copy, so Probe
// may be called concurrently from several threads.
class BoundProber {
 public:
  BoundProber(const LpModel& model, const LpSolution& solution,
              const SimplexOptions& options = {});
  ~BoundProber();
  BoundProber(BoundProber&&) noexcept;
  BoundProber& operator=(BoundProber&&) noexcept;

  BoundResult Probe(int var, BoundChange change, double value,
                    std::int64_t iter_cap = -1) const;
  // Same, with both bounds of var replaced.
  BoundResult ProbeFixed(int var, double lower, double upper,
                         std::int64_t iter_cap = -1) const;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace psplit::lp

#endif  // PSPLIT_LP_H_
