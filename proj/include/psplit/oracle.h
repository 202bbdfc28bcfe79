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

// Reference solvers for cross-checking: exhaustive lattice enumeration and a
// textbook LP-based branch-and-bound. Neither depends on the level search.

#ifndef PSPLIT_ORACLE_H_
#define PSPLIT_ORACLE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psplit/errors.h"
#include "psplit/lp.h"
#include "psplit/model.h"

namespace psplit {

enum class OracleStatus { kOptimal, kInfeasible };

// One expanded branch-and-bound node.
struct NodeRecord {
  std::int64_t id = 0;
  std::int64_t parent = -1;
  int depth = 0;
  double relaxation_value = 0.0;
  int branch_var = -1;  // -1 when the node was not split
  double branch_value = 0.0;
};

struct OracleResult {
  OracleStatus status = OracleStatus::kInfeasible;
  IntegerPoint point;
  WideInt value = 0;
  // Lattice points enumerated, or nodes expanded.
  std::int64_t count = 0;
  std::vector<NodeRecord> node_log;
};

// A node or enumeration cap was hit. Carries the best point found so far.
class OracleLimit : public ResourceLimit {
 public:
  OracleLimit(const std::string& what, OracleResult partial)
      : ResourceLimit(what), partial_(std::move(partial)) {}

  const OracleResult& partial() const { return partial_; }

 private:
  OracleResult partial_;
};

// Per-variable integer upper bounds: var_upper where present, otherwise
// floor(max x_j over the relaxation). All zeros when the relaxation is
// infeasible. Throws UnboundedRelaxation if some x_j is unbounded.
std::vector<std::int64_t> EnumerationBox(const Problem& problem,
                                         const lp::SimplexOptions& options = {});

// Enumerates every point of {0..box_0} x ... x {0..box_{n-1}} and returns the
// lexicographically smallest maximizer. Throws OracleLimit when the box has
// more than max_points points.
OracleResult BruteForce(const Problem& problem,
                        std::span<const std::int64_t> box,
                        std::int64_t max_points = 10'000'000);
OracleResult BruteForce(const Problem& problem,
                        std::int64_t max_points = 10'000'000);

enum class NodeSelection { kBestBound, kDepthFirst };

struct BranchAndBoundOptions {
  NodeSelection selection = NodeSelection::kBestBound;
  std::int64_t max_nodes = 1'000'000;
  double int_tol = 1e-6;
  bool record_log = false;
  lp::SimplexOptions simplex;
};

// Branches on the most fractional variable (ties: lowest index) with children
// x_j <= floor(v) and x_j >= floor(v) + 1. Throws UnboundedRelaxation when the
// root relaxation is unbounded and OracleLimit when max_nodes is exceeded.
OracleResult BranchAndBound(const Problem& problem,
                            const BranchAndBoundOptions& options = {});

}  // namespace psplit

#endif  // PSPLIT_ORACLE_H_
