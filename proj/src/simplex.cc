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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lu_factor.h"
#include "psplit/lp.h"

namespace psplit::lp {

namespace {

void CheckShape(const LpModel& model) {
  const int n = model.num_cols();
  const int m = model.num_rows();
  if (static_cast<int>(model.lower.size()) != n ||
      static_cast<int>(model.upper.size()) != n) {
    throw std::invalid_argument("bound vectors do not match column count");
  }
  if (model.constraints.rows() != m || model.constraints.cols() != n) {
    throw std::invalid_argument(
        "constraint matrix is " + std::to_string(model.constraints.rows()) +
        "x" + std::to_string(model.constraints.cols()) + ", expected " +
        std::to_string(m) + "x" + std::to_string(n));
  }
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(model.lower[j])) {
      throw std::invalid_argument("column lower bounds must be finite");
    }
    if (model.lower[j] > model.upper[j]) {
      throw std::invalid_argument("column " + std::to_string(j) +
                                  " has lower > upper");
    }
  }
}

}  // namespace

void LpModel::Validate() {
  if (lower.empty()) lower.assign(num_cols(), 0.0);
  if (upper.empty()) upper.assign(num_cols(), kInfinity);
  CheckShape(*this);
}

namespace {

enum class Outcome { kOptimal, kInfeasible, kUnbounded, kCapped };

// Worker-owned simplex state. Internally always maximizes.
class Engine {
 public:
  Engine(const LpModel& model, const SimplexOptions& options)
      : model_(&model),
        options_(options),
        n_(model.num_cols()),
        m_(model.num_rows()),
        total_(n_ + m_) {
    cost_.assign(total_, 0.0);
    const double sign = model.sense == Sense::kMaximize ? 1.0 : -1.0;
    for (int j = 0; j < n_; ++j) cost_[j] = sign * model.objective[j];
    lower_.assign(total_, 0.0);
    upper_.assign(total_, kInfinity);
    for (int j = 0; j < n_; ++j) {
      lower_[j] = model.lower.empty() ? 0.0 : model.lower[j];
      upper_[j] = model.upper.empty() ? kInfinity : model.upper[j];
    }
    if (options_.max_iterations <= 0) {
      options_.max_iterations = 100LL * total_ + 1000;
    }
    if (options_.bland_after <= 0) options_.bland_after = 3LL * total_;
    x_.assign(total_, 0.0);
    status_.assign(total_, VarStatus::kAtLower);
    row_of_.assign(total_, -1);
    basic_.assign(m_, -1);
    work_.assign(std::max(m_, 1), 0.0);
    alpha_.assign(std::max(m_, 1), 0.0);
  }

  void LoadSlackBasis() {
    for (int k = 0; k < total_; ++k) {
      status_[k] = VarStatus::kAtLower;
      row_of_[k] = -1;
      x_[k] = lower_[k];
    }
    for (int i = 0; i < m_; ++i) {
      basic_[i] = n_ + i;
      status_[n_ + i] = VarStatus::kBasic;
      row_of_[n_ + i] = i;
    }
    Refactor();
  }

  bool LoadBasis(const Basis& basis) {
    if (static_cast<int>(basis.basic.size()) != m_ ||
        static_cast<int>(basis.status.size()) != total_) {
      return false;
    }
    std::fill(row_of_.begin(), row_of_.end(), -1);
    for (int i = 0; i < m_; ++i) {
      const int k = basis.basic[i];
      if (k < 0 || k >= total_ || row_of_[k] >= 0 ||
          basis.status[k] != VarStatus::kBasic) {
        return false;
      }
      row_of_[k] = i;
      basic_[i] = k;
    }
    for (int k = 0; k < total_; ++k) {
      if (row_of_[k] >= 0) {
        status_[k] = VarStatus::kBasic;
        continue;
      }
      if (basis.status[k] == VarStatus::kBasic) return false;
      status_[k] = basis.status[k];
      if (status_[k] == VarStatus::kAtUpper && !std::isfinite(upper_[k])) {
        status_[k] = VarStatus::kAtLower;
      }
      x_[k] = status_[k] == VarStatus::kAtUpper ? upper_[k] : lower_[k];
    }
    return TryRefactor();
  }

  // Replaces the bounds of one variable, keeping the basis. Returns false when
  // the new bounds are empty.
  bool SetBounds(int var, double lo, double hi) {
    if (lo > hi + options_.feas_tol) return false;
    if (lo > hi) hi = lo;
    lower_[var] = lo;
    upper_[var] = hi;
    if (status_[var] == VarStatus::kBasic) return true;
    if (status_[var] == VarStatus::kAtUpper && !std::isfinite(hi)) {
      status_[var] = VarStatus::kAtLower;
    }
    const double target = status_[var] == VarStatus::kAtUpper ? hi : lo;
    const double delta = target - x_[var];
    if (delta != 0.0) {
      LoadColumn(var, alpha_);
      factor_.Ftran(alpha_);
      for (int i = 0; i < m_; ++i) x_[basic_[i]] -= delta * alpha_[i];
      x_[var] = target;
    }
    return true;
  }

  bool IsPrimalFeasible() const {
    for (int i = 0; i < m_; ++i) {
      const int b = basic_[i];
      if (x_[b] < lower_[b] - options_.feas_tol ||
          x_[b] > upper_[b] + options_.feas_tol) {
        return false;
      }
    }
    return true;
  }

  bool IsDualFeasible() {
    ComputeDuals(/*phase_one=*/false);
    for (int k = 0; k < total_; ++k) {
      if (status_[k] == VarStatus::kBasic || lower_[k] == upper_[k]) continue;
      const double d = ReducedCost(k, false);
      if (status_[k] == VarStatus::kAtLower && d > options_.opt_tol) return false;
      if (status_[k] == VarStatus::kAtUpper && d < -options_.opt_tol) return false;
    }
    return true;
  }

  Outcome Primal() {
    const Outcome phase_one = RunPrimal(/*phase_one=*/true);
    if (phase_one != Outcome::kOptimal) return phase_one;
    return RunPrimal(/*phase_one=*/false);
  }

  Outcome Dual(std::int64_t cap) {
    std::int64_t steps = 0;
    std::int64_t degenerate = 0;
    bool bland = false;
    int retries = 0;
    std::vector<double> rho(std::max(m_, 1));
    while (true) {
      if (factor_.num_updates() >= options_.refactor_interval) Refactor();
      int leave_row = -1;
      double worst = options_.feas_tol;
      for (int i = 0; i < m_; ++i) {
        const int b = basic_[i];
        const double v =
            std::max(lower_[b] - x_[b], x_[b] - upper_[b]);
        if (v <= options_.feas_tol) continue;
        if (bland) {
          if (leave_row < 0 || b < basic_[leave_row]) leave_row = i;
        } else if (v > worst) {
          worst = v;
          leave_row = i;
        }
      }
      if (leave_row < 0) return Outcome::kOptimal;
      if (cap >= 0 && steps >= cap) return Outcome::kCapped;
      CheckIterationLimit();

      const int leaving = basic_[leave_row];
      const bool below = x_[leaving] < lower_[leaving];
      ComputeDuals(false);
      std::fill(rho.begin(), rho.end(), 0.0);
      rho[leave_row] = 1.0;
      factor_.Btran(rho);

      int entering = -1;
      double best_ratio = kInfinity;
      double best_pivot = 0.0;
      for (int k = 0; k < total_; ++k) {
        if (status_[k] == VarStatus::kBasic || lower_[k] == upper_[k]) continue;
        const double a = DotColumn(rho, k);
        if (std::abs(a) <= options_.pivot_tol) continue;
        const bool at_lower = status_[k] == VarStatus::kAtLower;
        const bool eligible =
            below ? (at_lower ? a < 0 : a > 0) : (at_lower ? a > 0 : a < 0);
        if (!eligible) continue;
        const double d = ReducedCost(k, false);
        const double slack = at_lower ? std::max(0.0, -d) : std::max(0.0, d);
        const double ratio = slack / std::abs(a);
        bool better;
        if (entering < 0) {
          better = true;
        } else if (ratio < best_ratio - kTieTol) {
          better = true;
        } else if (ratio <= best_ratio + kTieTol) {
          better = bland ? k < entering : std::abs(a) > best_pivot;
        } else {
          better = false;
        }
        if (better) {
          entering = k;
          best_ratio = ratio;
          best_pivot = std::abs(a);
        }
      }
      if (entering < 0) return Outcome::kInfeasible;

      LoadColumn(entering, alpha_);
      factor_.Ftran(alpha_);
      const double pivot = alpha_[leave_row];
      if (std::abs(pivot) <= options_.pivot_tol) {
        if (++retries > 2) {
          throw LpError(LpError::Kind::kNumericalBreakdown,
                        "dual simplex pivot below tolerance", Objective());
        }
        Refactor();
        continue;
      }
      retries = 0;
      const double bound = below ? lower_[leaving] : upper_[leaving];
      const double theta = (x_[leaving] - bound) / pivot;
      x_[entering] += theta;
      for (int i = 0; i < m_; ++i) x_[basic_[i]] -= theta * alpha_[i];
      Pivot(leave_row, entering,
            below ? VarStatus::kAtLower : VarStatus::kAtUpper);
      ++steps;
      if (best_ratio <= kTieTol) {
        if (++degenerate >= options_.bland_after) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
    }
  }

  // Internal (maximization) objective, without the model constant.
  double Objective() const {
    double z = 0.0;
    for (int j = 0; j < n_; ++j) z += cost_[j] * x_[j];
    return z;
  }

  // Objective in the model's sense, including the constant.
  double ModelObjective() const {
    double z = model_->objective_constant;
    for (int j = 0; j < n_; ++j) z += model_->objective[j] * x_[j];
    return z;
  }

  double Infeasibility() const {
    double sum = 0.0;
    for (int i = 0; i < m_; ++i) {
      const int b = basic_[i];
      sum += std::max(0.0, lower_[b] - x_[b]) + std::max(0.0, x_[b] - upper_[b]);
    }
    return sum;
  }

  void Polish() { Refactor(); }

  LpSolution Extract(LpStatus status) const {
    LpSolution s;
    s.status = status;
    s.point.assign(x_.begin(), x_.begin() + n_);
    s.value = ModelObjective();
    s.basis.basic = basic_;
    s.basis.status = status_;
    s.iterations = iterations_;
    if (status == LpStatus::kInfeasible) s.infeasibility = Infeasibility();
    if (status == LpStatus::kUnbounded) s.ray = ray_;
    return s;
  }

  std::int64_t iterations() const { return iterations_; }

 private:
  static constexpr double kTieTol = 1e-12;

  void CheckIterationLimit() {
    if (iterations_ >= options_.max_iterations) {
      const double sign = model_->sense == Sense::kMaximize ? 1.0 : -1.0;
      throw LpError(LpError::Kind::kIterationLimit,
                    "simplex iteration limit (" +
                        std::to_string(options_.max_iterations) + ") exceeded",
                    sign * Objective() + model_->objective_constant);
    }
  }

  void LoadColumn(int k, std::span<double> out) const {
    std::fill(out.begin(), out.begin() + m_, 0.0);
    if (k < n_) {
      const auto col = model_->constraints.column(k);
      std::copy(col.begin(), col.end(), out.begin());
    } else {
      out[k - n_] = 1.0;
    }
  }

  double DotColumn(std::span<const double> y, int k) const {
    if (k >= n_) return y[k - n_];
    const auto col = model_->constraints.column(k);
    double s = 0.0;
    for (int i = 0; i < m_; ++i) s += y[i] * col[i];
    return s;
  }

  bool TryRefactor() {
    const bool ok = factor_.Factorize(
        m_,
        [&](int i, std::span<double> out) { LoadColumn(basic_[i], out); },
        options_.pivot_tol);
    if (ok) ComputeBasicValues();
    return ok;
  }

  void Refactor() {
    if (!TryRefactor()) {
      throw LpError(LpError::Kind::kNumericalBreakdown,
                    "basis matrix is numerically singular", Objective());
    }
  }

  void ComputeBasicValues() {
    if (m_ == 0) return;
    for (int i = 0; i < m_; ++i) work_[i] = model_->rhs[i];
    for (int k = 0; k < total_; ++k) {
      if (status_[k] == VarStatus::kBasic || x_[k] == 0.0) continue;
      if (k < n_) {
        const auto col = model_->constraints.column(k);
        for (int i = 0; i < m_; ++i) work_[i] -= col[i] * x_[k];
      } else {
        work_[k - n_] -= x_[k];
      }
    }
    factor_.Ftran(std::span<double>(work_.data(), m_));
    for (int i = 0; i < m_; ++i) x_[basic_[i]] = work_[i];
  }

  // Phase one prices the sum of bound violations of the basic variables.
  double PhaseCost(int k, bool phase_one) const {
    if (!phase_one) return cost_[k];
    if (status_[k] != VarStatus::kBasic) return 0.0;
    if (x_[k] < lower_[k] - options_.feas_tol) return 1.0;
    if (x_[k] > upper_[k] + options_.feas_tol) return -1.0;
    return 0.0;
  }

  void ComputeDuals(bool phase_one) {
    duals_.assign(std::max(m_, 1), 0.0);
    for (int i = 0; i < m_; ++i) duals_[i] = PhaseCost(basic_[i], phase_one);
    if (m_ > 0) factor_.Btran(std::span<double>(duals_.data(), m_));
  }

  double ReducedCost(int k, bool phase_one) const {
    return PhaseCost(k, phase_one) - DotColumn(duals_, k);
  }

  void Pivot(int row, int entering, VarStatus leave_to) {
    const int leaving = basic_[row];
    x_[leaving] = leave_to == VarStatus::kAtLower ? lower_[leaving]
                                                  : upper_[leaving];
    status_[leaving] = leave_to;
    row_of_[leaving] = -1;
    basic_[row] = entering;
    status_[entering] = VarStatus::kBasic;
    row_of_[entering] = row;
    factor_.Update(row, std::span<const double>(alpha_.data(), m_));
    ++iterations_;
  }

  Outcome RunPrimal(bool phase_one) {
    std::int64_t degenerate = 0;
    bool bland = false;
    while (true) {
      if (factor_.num_updates() >= options_.refactor_interval) Refactor();
      if (phase_one && IsPrimalFeasible()) return Outcome::kOptimal;
      CheckIterationLimit();
      ComputeDuals(phase_one);

      int entering = -1;
      double best = 0.0;
      int direction = 0;
      for (int k = 0; k < total_; ++k) {
        if (status_[k] == VarStatus::kBasic || lower_[k] == upper_[k]) continue;
        const double d = ReducedCost(k, phase_one);
        int dir = 0;
        if (status_[k] == VarStatus::kAtLower && d > options_.opt_tol) dir = 1;
        if (status_[k] == VarStatus::kAtUpper && d < -options_.opt_tol) dir = -1;
        if (dir == 0) continue;
        if (bland) {
          entering = k;
          direction = dir;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          entering = k;
          direction = dir;
        }
      }
      if (entering < 0) {
        return phase_one ? Outcome::kInfeasible : Outcome::kOptimal;
      }

      LoadColumn(entering, alpha_);
      factor_.Ftran(alpha_);
      double step = upper_[entering] - lower_[entering];
      int leave_row = -1;
      VarStatus leave_to = VarStatus::kAtLower;
      double best_pivot = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double a = alpha_[i];
        if (std::abs(a) <= options_.pivot_tol) continue;
        const int b = basic_[i];
        const double rate = -direction * a;
        const double xb = x_[b];
        const bool low_viol = phase_one && xb < lower_[b] - options_.feas_tol;
        const bool high_viol = phase_one && xb > upper_[b] + options_.feas_tol;
        double limit;
        VarStatus to;
        if (rate > 0) {
          if (high_viol) continue;
          if (low_viol) {
            limit = (lower_[b] - xb) / rate;
            to = VarStatus::kAtLower;
          } else if (std::isfinite(upper_[b])) {
            limit = std::max(0.0, upper_[b] - xb) / rate;
            to = VarStatus::kAtUpper;
          } else {
            continue;
          }
        } else {
          if (low_viol) continue;
          if (high_viol) {
            limit = (xb - upper_[b]) / -rate;
            to = VarStatus::kAtUpper;
          } else {
            limit = std::max(0.0, xb - lower_[b]) / -rate;
            to = VarStatus::kAtLower;
          }
        }
        bool better;
        if (limit < step - kTieTol) {
          better = true;
        } else if (leave_row >= 0 && limit <= step + kTieTol) {
          better = bland ? b < basic_[leave_row] : std::abs(a) > best_pivot;
        } else {
          better = false;
        }
        if (better) {
          step = limit;
          leave_row = i;
          leave_to = to;
          best_pivot = std::abs(a);
        }
      }
      if (!std::isfinite(step)) {
        if (phase_one) {
          throw LpError(LpError::Kind::kNumericalBreakdown,
                        "phase one found an unbounded direction", Objective());
        }
        ray_.assign(n_, 0.0);
        if (entering < n_) ray_[entering] = direction;
        for (int i = 0; i < m_; ++i) {
          if (basic_[i] < n_) ray_[basic_[i]] = -direction * alpha_[i];
        }
        return Outcome::kUnbounded;
      }

      x_[entering] += direction * step;
      for (int i = 0; i < m_; ++i) x_[basic_[i]] -= direction * alpha_[i] * step;
      if (leave_row < 0) {
        // Bound flip of the entering variable.
        status_[entering] = direction > 0 ? VarStatus::kAtUpper
                                          : VarStatus::kAtLower;
        x_[entering] = direction > 0 ? upper_[entering] : lower_[entering];
        ++iterations_;
      } else {
        Pivot(leave_row, entering, leave_to);
      }
      if (step <= kTieTol) {
        if (++degenerate >= options_.bland_after) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
    }
  }

  const LpModel* model_;
  SimplexOptions options_;
  int n_;
  int m_;
  int total_;
  std::vector<double> cost_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> x_;
  std::vector<VarStatus> status_;
  std::vector<int> row_of_;
  std::vector<int> basic_;
  LuFactor factor_;
  std::vector<double> duals_;
  std::vector<double> work_;
  std::vector<double> alpha_;
  std::vector<double> ray_;
  std::int64_t iterations_ = 0;
};

LpModel Normalized(const LpModel& model) {
  LpModel copy = model;
  copy.Validate();
  return copy;
}

bool NeedsNormalization(const LpModel& model) {
  return model.lower.empty() || model.upper.empty();
}

LpSolution Finish(Engine& engine, Outcome outcome) {
  switch (outcome) {
    case Outcome::kOptimal:
      engine.Polish();
      return engine.Extract(LpStatus::kOptimal);
    case Outcome::kInfeasible:
      return engine.Extract(LpStatus::kInfeasible);
    case Outcome::kUnbounded:
      return engine.Extract(LpStatus::kUnbounded);
    case Outcome::kCapped:
      break;
  }
  throw std::logic_error("unexpected simplex outcome");
}

LpSolution SolveValidated(const LpModel& model, const Basis* warm,
                          const SimplexOptions& options) {
  Engine engine(model, options);
  const bool warm_ok = warm != nullptr && engine.LoadBasis(*warm);
  if (!warm_ok) engine.LoadSlackBasis();
  if (warm_ok && !engine.IsPrimalFeasible() && engine.IsDualFeasible()) {
    const Outcome dual = engine.Dual(-1);
    if (dual == Outcome::kOptimal) return Finish(engine, dual);
    // Dual unboundedness: confirm with phase one to record the certificate.
  }
  return Finish(engine, engine.Primal());
}

}  // namespace

LpSolution Solve(const LpModel& model, const Basis* warm,
                 const SimplexOptions& options) {
  if (NeedsNormalization(model)) {
    const LpModel copy = Normalized(model);
    return SolveValidated(copy, warm, options);
  }
  CheckShape(model);
  return SolveValidated(model, warm, options);
}

class BoundProber::Impl {
 public:
  Impl(const LpModel& model, const LpSolution& solution,
       const SimplexOptions& options)
      : model_(Normalized(model)),
        options_(options),
        engine_(model_, options_) {
    if (solution.status != LpStatus::kOptimal) {
      throw std::invalid_argument("bound probing needs an optimal solution");
    }
    if (!engine_.LoadBasis(solution.basis)) {
      throw LpError(LpError::Kind::kNumericalBreakdown,
                    "optimal basis does not factorize", solution.value);
    }
  }

  BoundResult Run(int var, double lower, double upper,
                  std::int64_t iter_cap) const {
    Engine engine = engine_;
    BoundResult result;
    if (!engine.SetBounds(var, lower, upper)) {
      result.status = BoundStatus::kRestrictedInfeasible;
      result.bound = model_.sense == Sense::kMaximize ? -kInfinity : kInfinity;
      return result;
    }
    const std::int64_t before = engine.iterations();
    const Outcome outcome = engine.Dual(iter_cap);
    result.iterations = engine.iterations() - before;
    switch (outcome) {
      case Outcome::kOptimal:
        result.status = BoundStatus::kExact;
        break;
      case Outcome::kCapped:
        result.status = BoundStatus::kValidBound;
        break;
      default:
        result.status = BoundStatus::kRestrictedInfeasible;
        result.bound = model_.sense == Sense::kMaximize ? -kInfinity : kInfinity;
        return result;
    }
    result.bound = engine.ModelObjective();
    return result;
  }

  const LpModel& model() const { return model_; }

 private:
  LpModel model_;
  SimplexOptions options_;
  Engine engine_;
};

BoundProber::BoundProber(const LpModel& model, const LpSolution& solution,
                         const SimplexOptions& options)
    : impl_(std::make_unique<Impl>(model, solution, options)) {}

BoundProber::~BoundProber() = default;
BoundProber::BoundProber(BoundProber&&) noexcept = default;
BoundProber& BoundProber::operator=(BoundProber&&) noexcept = default;

BoundResult BoundProber::Probe(int var, BoundChange change, double value,
                               std::int64_t iter_cap) const {
  const LpModel& model = impl_->model();
  if (var < 0 || var >= model.num_cols()) {
    throw std::out_of_range("bound probe on unknown column");
  }
  const double lower = model.lower[var];
  const double upper = model.upper[var];
  if (change == BoundChange::kSetUpper) {
    return impl_->Run(var, lower, std::min(upper, value), iter_cap);
  }
  return impl_->Run(var, std::max(lower, value), upper, iter_cap);
}

BoundResult BoundProber::ProbeFixed(int var, double lower, double upper,
                                    std::int64_t iter_cap) const {
  if (var < 0 || var >= impl_->model().num_cols()) {
    throw std::out_of_range("bound probe on unknown column");
  }
  return impl_->Run(var, lower, upper, iter_cap);
}

BoundResult ResolveWithBound(const LpModel& model, const LpSolution& solution,
                             int var, BoundChange change, double value,
                             std::int64_t iter_cap,
                             const SimplexOptions& options) {
  return BoundProber(model, solution, options).Probe(var, change, value,
                                                     iter_cap);
}

}  // namespace psplit::lp
