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

// Level-sweep search.
//
// The objective of an integer program with integer c and h only takes integer
// values. The solver visits candidate optimal levels z from the relaxation
// maximum downwards. At each level it slices every projection, fixes each
// variable whose range is a single value, recomputes projections of the
// reduced problem and repeats; when no range is a singleton it splits on one
// variable and keeps the alternatives in a list. The complete points produced
// this way form the candidate set of the level. A feasible candidate whose
// objective equals the level being scanned is optimal.

#ifndef PSPLIT_SEARCH_H_
#define PSPLIT_SEARCH_H_

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psplit/errors.h"
#include "psplit/model.h"
#include "psplit/projection.h"

namespace psplit {

enum class SplitPolicy {
  kMaxCoefficient,  // largest objective coefficient
  kMinRange,        // fewest range values
  kFirstIndex,
};

enum class ListPolicy { kLifo, kFifo };

struct SearchConfig {
  SplitPolicy split = SplitPolicy::kMaxCoefficient;
  ListPolicy list = ListPolicy::kLifo;
  // Apply the stopping test to candidates as they are produced instead of
  // after the whole level has been inspected.
  bool stream_check = false;
  ProjectionMode projection_mode = ProjectionMode::kAuto;
  ProjectionOptions projection;
  std::int64_t max_list_size = 0;   // 0: unlimited
  double time_limit_seconds = 0.0;  // 0: unlimited
  bool record_trace = false;
};

struct LevelInterval {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
};

struct CandidateSet {
  std::int64_t level = 0;
  std::vector<IntegerPoint> points;  // insertion order, no duplicates

  bool Contains(const IntegerPoint& x) const;
};

struct LevelStats {
  std::int64_t level = 0;
  // Percentage of variables still active after the first fixing pass on the
  // full problem; empty when that pass found an empty range.
  std::optional<double> av_after_first_pass;
  std::int64_t candidates = 0;
  std::int64_t nodes = 0;
  std::int64_t peak_list_size = 0;
};

struct SearchStats {
  std::int64_t levels_scanned = 0;
  std::vector<LevelStats> levels;
  std::int64_t peak_list_size = 0;
  std::int64_t lp_solves = 0;
  std::int64_t dual_resolves = 0;
  std::int64_t candidates_checked = 0;
  std::int64_t nodes = 0;
  std::int64_t peak_memory_bytes = 0;
  int max_range_size = 0;  // over every range computed during the run

  // First-pass AV% of the last level scanned.
  std::optional<double> FinalLevelAv() const;
};

enum class TraceKind {
  kLevel,       // value = level
  kEmptyRange,  // var
  kFix,         // var, value
  kSplit,       // var, values
  kCandidate,   // point
  kIncumbent,   // point, value
  kOptimal,     // point, value
};

struct TraceEvent {
  TraceKind kind;
  std::int64_t level = 0;
  int var = -1;
  std::int64_t value = 0;
  std::vector<std::int64_t> values;
  IntegerPoint point;
};

struct IncumbentUpdate {
  std::int64_t level = 0;
  IntegerPoint point;
  WideInt value;
};

enum class SearchStatus { kOptimal, kInfeasible };

struct Outcome {
  SearchStatus status = SearchStatus::kInfeasible;
  IntegerPoint point;  // valid when optimal
  WideInt value;       // valid when optimal
  std::vector<IncumbentUpdate> incumbents;
  SearchStats stats;
  std::vector<TraceEvent> trace;
};

// A time or list-size limit stopped the search.
class SearchAborted : public ResourceLimit {
 public:
  SearchAborted(const std::string& what,
                std::optional<IncumbentUpdate> incumbent, SearchStats stats)
      : ResourceLimit(what),
        incumbent_(std::move(incumbent)),
        stats_(std::move(stats)) {}

  const std::optional<IncumbentUpdate>& incumbent() const {
    return incumbent_;
  }
  const SearchStats& stats() const { return stats_; }

 private:
  std::optional<IncumbentUpdate> incumbent_;
  SearchStats stats_;
};

// Integer interval containing every objective value of an integer point of the
// relaxation. Throws RelaxationInfeasible or UnboundedRelaxation.
LevelInterval ComputeLevelInterval(const Problem& problem,
                                   const ProjectionOptions& options = {},
                                   ProjectionStats* stats = nullptr);

// Called for each candidate as it is produced; returning true stops the
// inspection.
using CandidateVisitor = std::function<bool(const IntegerPoint&)>;

// Candidate set of one level. `projections` must be the projections of
// `problem`.
CandidateSet InspectLevel(const Problem& problem, std::int64_t level,
                          const std::vector<Projection>& projections,
                          const SearchConfig& config = {},
                          SearchStats* stats = nullptr,
                          std::vector<TraceEvent>* trace = nullptr,
                          const CandidateVisitor& visitor = {});

// ranges holds the ranges of the active variables (RangeSet::var is the
// variable index); returns the variable to split on.
int SelectSplitVariable(std::span<const RangeSet> ranges,
                        std::span<const std::int64_t> objective,
                        SplitPolicy policy);

// Removes and returns the next partial candidate. Throws std::out_of_range on
// an empty list.
PartialCandidate PopCandidate(std::deque<PartialCandidate>& list,
                              ListPolicy policy);

// Sweeps levels from the top of the level interval downwards. Throws
// SearchAborted on a time or list-size limit, UnboundedRelaxation when the
// relaxation is unbounded.
Outcome Solve(const Problem& problem, const SearchConfig& config = {});

}  // namespace psplit

#endif  // PSPLIT_SEARCH_H_
