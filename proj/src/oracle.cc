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

#include "psplit/oracle.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <utility>

namespace psplit {
namespace {

// Relaxation model built here rather than borrowed from the projection code,
// so the oracles stay independent of the solver they check.
lp::LpModel Relaxation(const Problem& problem) {
  const int n = problem.num_vars();
  const int m = problem.num_rows();
  lp::LpModel model;
  model.sense = lp::Sense::kMaximize;
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
      model.constraints(i, j) = static_cast<double>(row.coefficients[j]) / den;
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

OracleResult EmptyProblem(const Problem& problem) {
  OracleResult result;
  result.count = 1;
  const IntegerPoint origin;
  if (IsFeasible(problem, origin)) {
    result.status = OracleStatus::kOptimal;
    result.point = origin;
    result.value = Evaluate(problem, origin);
  }
  return result;
}

__int128 Checked(__int128 a, __int128 b) {
  __int128 out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("enumeration value exceeds 128 bits");
  }
  return out;
}

__int128 CheckedMul(__int128 a, __int128 b) {
  __int128 out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("enumeration value exceeds 128 bits");
  }
  return out;
}

}  // namespace

std::vector<std::int64_t> EnumerationBox(const Problem& problem,
                                         const lp::SimplexOptions& options) {
  const int n = problem.num_vars();
  std::vector<std::int64_t> box(n, 0);
  lp::LpModel model = Relaxation(problem);
  for (int j = 0; j < n; ++j) {
    if (const auto u = problem.var_upper(j)) {
      box[j] = *u;
      continue;
    }
    std::fill(model.objective.begin(), model.objective.end(), 0.0);
    model.objective[j] = 1.0;
    model.objective_constant = 0.0;
    const lp::LpSolution sol = lp::Solve(model, nullptr, options);
    if (sol.status == lp::LpStatus::kInfeasible) {
      return std::vector<std::int64_t>(n, 0);
    }
    if (sol.status == lp::LpStatus::kUnbounded) {
      throw UnboundedRelaxation("x_" + std::to_string(j) +
                                " is unbounded over the relaxation");
    }
    box[j] = static_cast<std::int64_t>(std::floor(sol.value + 1e-6));
  }
  return box;
}

OracleResult BruteForce(const Problem& problem,
                        std::span<const std::int64_t> box,
                        std::int64_t max_points) {
  const int n = problem.num_vars();
  const int m = problem.num_rows();
  if (static_cast<int>(box.size()) != n) {
    throw InputError("box has " + std::to_string(box.size()) +
                     " entries, expected " + std::to_string(n));
  }
  if (n == 0) return EmptyProblem(problem);
  double total = 1.0;
  for (std::int64_t b : box) {
    if (b < 0) throw InputError("negative box bound");
    total *= static_cast<double>(b) + 1.0;
  }
  if (total > static_cast<double>(max_points)) {
    throw OracleLimit("enumeration box has " + std::to_string(total) +
                          " points, cap is " + std::to_string(max_points),
                      OracleResult{});
  }

  // Objective and row activities are kept incrementally in 128 bits while
  // the odometer x advances in lexicographic order.
  std::vector<std::int64_t> x(n, 0);
  __int128 objective = 0;
  std::vector<__int128> activity(m, 0);
  OracleResult result;
  std::optional<__int128> best;
  std::vector<std::int64_t> best_x;
  while (true) {
    ++result.count;
    bool feasible = true;
    for (int i = 0; i < m && feasible; ++i) {
      feasible = activity[i] <= problem.row(i).rhs;
    }
    if (feasible && (!best || objective > *best)) {
      best = objective;
      best_x = x;
    }
    int j = n - 1;
    while (j >= 0 && x[j] == box[j]) {
      objective = Checked(objective, CheckedMul(-problem.objective(j), x[j]));
      for (int i = 0; i < m; ++i) {
        activity[i] = Checked(
            activity[i], CheckedMul(-problem.row(i).coefficients[j], x[j]));
      }
      x[j] = 0;
      --j;
    }
    if (j < 0) break;
    ++x[j];
    objective = Checked(objective, problem.objective(j));
    for (int i = 0; i < m; ++i) {
      activity[i] = Checked(activity[i], problem.row(i).coefficients[j]);
    }
  }
  if (best) {
    result.status = OracleStatus::kOptimal;
    result.point = IntegerPoint(std::move(best_x));
    result.value = Evaluate(problem, result.point);
  }
  return result;
}

OracleResult BruteForce(const Problem& problem, std::int64_t max_points) {
  if (problem.num_vars() == 0) return EmptyProblem(problem);
  return BruteForce(problem, EnumerationBox(problem), max_points);
}

namespace {

struct Node {
  std::int64_t id = 0;
  std::int64_t parent = -1;
  int depth = 0;
  std::vector<double> lower;
  std::vector<double> upper;
  lp::LpSolution solution;
};

struct WorseBound {
  bool operator()(const Node& a, const Node& b) const {
    if (a.solution.value != b.solution.value) {
      return a.solution.value < b.solution.value;
    }
    return a.id > b.id;
  }
};

class BranchAndBoundRun {
 public:
  BranchAndBoundRun(const Problem& problem,
                    const BranchAndBoundOptions& options)
      : problem_(problem), options_(options), model_(Relaxation(problem)) {}

  OracleResult Run() {
    Node root;
    root.lower = model_.lower;
    root.upper = model_.upper;
    root.solution = lp::Solve(model_, nullptr, options_.simplex);
    if (root.solution.status == lp::LpStatus::kUnbounded) {
      throw UnboundedRelaxation("objective is unbounded over the relaxation");
    }
    if (root.solution.status == lp::LpStatus::kOptimal) Push(std::move(root));

    while (!Empty()) {
      Node node = Pop();
      if (Pruned(node.solution.value)) continue;
      if (result_.count >= options_.max_nodes) {
        throw OracleLimit("branch-and-bound exceeded " +
                              std::to_string(options_.max_nodes) + " nodes",
                          result_);
      }
      ++result_.count;
      NodeRecord record{node.id, node.parent, node.depth,
                        node.solution.value};
      const int var = BranchVariable(node.solution.point);
      if (var < 0) {
        TryIncumbent(node.solution.point);
      } else {
        record.branch_var = var;
        record.branch_value = node.solution.point[var];
        Branch(node, var);
      }
      if (options_.record_log) result_.node_log.push_back(record);
    }
    return result_;
  }

 private:
  // Objective values are integers, so a node can only improve on the
  // incumbent if its bound reaches best + 1.
  bool Pruned(double bound) const {
    return has_best_ && std::floor(bound + options_.int_tol) <= best_;
  }

  int BranchVariable(const std::vector<double>& x) const {
    int var = -1;
    double score = options_.int_tol;
    for (int j = 0; j < static_cast<int>(x.size()); ++j) {
      const double frac = x[j] - std::floor(x[j]);
      const double dist = std::min(frac, 1.0 - frac);
      if (dist > score) {
        score = dist;
        var = j;
      }
    }
    return var;
  }

  void TryIncumbent(const std::vector<double>& x) {
    std::vector<std::int64_t> rounded(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      rounded[j] = static_cast<std::int64_t>(std::llround(x[j]));
    }
    IntegerPoint point(std::move(rounded));
    // A point that only looks integral and feasible in floating point is
    // dropped; the exact check is authoritative.
    if (!IsFeasible(problem_, point)) return;
    WideInt value = Evaluate(problem_, point);
    if (has_best_ && value <= result_.value) return;
    result_.status = OracleStatus::kOptimal;
    result_.point = std::move(point);
    result_.value = value;
    has_best_ = true;
    best_ = static_cast<double>(value);
  }

  void Branch(const Node& node, int var) {
    const double split = std::floor(node.solution.point[var]);
    Node down = Child(node);
    down.upper[var] = split;
    Node up = Child(node);
    up.lower[var] = split + 1.0;
    // Depth-first explores the down branch first.
    for (Node* child : {&up, &down}) {
      if (child->lower[var] > child->upper[var]) continue;
      lp::LpModel model = model_;
      model.lower = child->lower;
      model.upper = child->upper;
      child->solution = lp::Solve(model, &node.solution.basis, options_.simplex);
      if (child->solution.status != lp::LpStatus::kOptimal) continue;
      if (Pruned(child->solution.value)) continue;
      Push(std::move(*child));
    }
  }

  Node Child(const Node& parent) {
    Node child;
    child.id = ++last_id_;
    child.parent = parent.id;
    child.depth = parent.depth + 1;
    child.lower = parent.lower;
    child.upper = parent.upper;
    return child;
  }

  void Push(Node node) {
    if (options_.selection == NodeSelection::kBestBound) {
      heap_.push(std::move(node));
    } else {
      stack_.push_back(std::move(node));
    }
  }

  bool Empty() const { return heap_.empty() && stack_.empty(); }

  Node Pop() {
    if (options_.selection == NodeSelection::kBestBound) {
      Node top = heap_.top();
      heap_.pop();
      return top;
    }
    Node top = std::move(stack_.back());
    stack_.pop_back();
    return top;
  }

  const Problem& problem_;
  const BranchAndBoundOptions& options_;
  lp::LpModel model_;
  OracleResult result_;
  bool has_best_ = false;
  double best_ = 0.0;
  std::int64_t last_id_ = 0;
  std::priority_queue<Node, std::vector<Node>, WorseBound> heap_;
  std::vector<Node> stack_;
};

}  // namespace

OracleResult BranchAndBound(const Problem& problem,
                            const BranchAndBoundOptions& options) {
  if (problem.num_vars() == 0) return EmptyProblem(problem);
  return BranchAndBoundRun(problem, options).Run();
}

}  // namespace psplit
