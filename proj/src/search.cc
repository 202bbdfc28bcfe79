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

#include "psplit/search.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

#include "psplit/lp.h"

namespace psplit {
namespace {

using Clock = std::chrono::steady_clock;

TraceEvent Event(TraceKind kind, std::int64_t level, int var = -1,
                 std::int64_t value = 0) {
  TraceEvent event;
  event.kind = kind;
  event.level = level;
  event.var = var;
  event.value = value;
  return event;
}

std::int64_t ToLevel(double v) {
  if (!std::isfinite(v) || std::abs(v) > 9.0e18) {
    throw InputError("objective range exceeds 64-bit levels");
  }
  return static_cast<std::int64_t>(v);
}

// Walks one level: the fixing loop on the current partial candidate, then the
// next entry of the list, until the list is empty.
class LevelInspector {
 public:
  LevelInspector(const Problem& problem,
                 const std::vector<Projection>& root_projections,
                 const SearchConfig& config,
                 std::optional<Clock::time_point> deadline, SearchStats& stats,
                 std::vector<TraceEvent>* trace,
                 const std::optional<IncumbentUpdate>* incumbent)
      : problem_(problem),
        root_projections_(root_projections),
        config_(config),
        deadline_(deadline),
        stats_(stats),
        trace_(trace),
        incumbent_(incumbent) {}

  CandidateSet Run(std::int64_t level, const CandidateVisitor& visitor) {
    level_ = level;
    visitor_ = &visitor;
    CandidateSet cs;
    cs.level = level;
    seen_.clear();
    list_.clear();
    level_stats_ = LevelStats{};
    level_stats_.level = level;
    stopped_ = false;

    const int n = problem_.num_vars();
    PartialCandidate current(n, level);
    std::vector<int> active = current.ActiveVars();
    const std::vector<Projection>* projections = &root_projections_;
    std::vector<Projection> reduced_projections;
    bool first_pass = true;

    while (true) {
      bool descend = projections != nullptr;
      while (descend && !stopped_) {
        ++level_stats_.nodes;
        CheckDeadline();
        std::vector<RangeSet> ranges;
        ranges.reserve(active.size());
        bool any_empty = false;
        for (std::size_t k = 0; k < active.size(); ++k) {
          RangeSet r = Range((*projections)[k], level,
                             config_.projection.range_tol);
          r.var = active[k];
          stats_.max_range_size = std::max(stats_.max_range_size, r.size());
          if (r.empty()) {
            Trace(Event(TraceKind::kEmptyRange, level, r.var));
            any_empty = true;
            break;
          }
          ranges.push_back(std::move(r));
        }
        if (any_empty) {
          if (first_pass) first_pass = false;
          break;
        }

        bool fixed_any = false;
        for (const RangeSet& r : ranges) {
          if (r.size() != 1) continue;
          current.Fix(r.var, r.values[0]);
          Trace(Event(TraceKind::kFix, level, r.var, r.values[0]));
          fixed_any = true;
        }
        if (fixed_any) {
          active = current.ActiveVars();
          if (first_pass) {
            level_stats_.av_after_first_pass =
                n == 0 ? 0.0 : 100.0 * static_cast<double>(active.size()) / n;
            first_pass = false;
          }
          if (active.empty()) {
            AddCandidate(cs, current.ToPoint());
            break;
          }
          if (!Project(current, reduced_projections)) break;
          projections = &reduced_projections;
          continue;
        }

        if (first_pass) {
          level_stats_.av_after_first_pass = 100.0;
          first_pass = false;
        }
        const int split =
            SelectSplitVariable(ranges, problem_.objective(), config_.split);
        const RangeSet& split_range = *std::find_if(
            ranges.begin(), ranges.end(),
            [split](const RangeSet& r) { return r.var == split; });
        if (trace_ != nullptr) {
          TraceEvent event = Event(TraceKind::kSplit, level, split);
          event.values = split_range.values;
          trace_->push_back(std::move(event));
        }
        for (std::int64_t value : split_range.values) {
          PartialCandidate child = current;
          child.Fix(split, value);
          if (active.size() == 1) {
            AddCandidate(cs, child.ToPoint());
            if (stopped_) break;
          } else {
            list_.push_back(std::move(child));
          }
        }
        NoteMemory(cs);
        break;
      }
      if (stopped_) break;

      // Next partial candidate from the list.
      projections = nullptr;
      while (!list_.empty() && projections == nullptr) {
        CheckDeadline();
        current = PopCandidate(list_, config_.list);
        active = current.ActiveVars();
        if (Project(current, reduced_projections)) {
          projections = &reduced_projections;
        }
      }
      if (projections == nullptr) break;
    }

    level_stats_.candidates = static_cast<std::int64_t>(cs.points.size());
    stats_.nodes += level_stats_.nodes;
    stats_.levels.push_back(level_stats_);
    return cs;
  }

 private:
  void Trace(TraceEvent event) {
    if (trace_ != nullptr) trace_->push_back(std::move(event));
  }

  void CheckDeadline() {
    if (deadline_ && Clock::now() > *deadline_) {
      throw SearchAborted("time limit reached", Incumbent(), stats_);
    }
  }

  std::optional<IncumbentUpdate> Incumbent() const {
    return incumbent_ != nullptr ? *incumbent_ : std::nullopt;
  }

  // Projections of the problem reduced by `fixing`; false when its relaxation
  // is infeasible, which leaves no candidate on this branch.
  bool Project(const PartialCandidate& fixing, std::vector<Projection>& out) {
    const ReducedProblem reduced = Reduce(problem_, fixing);
    ProjectionStats ps;
    try {
      out = BuildProjections(reduced.problem(), config_.projection_mode,
                             config_.projection, &ps);
    } catch (const RelaxationInfeasible&) {
      stats_.lp_solves += ps.lp_solves;
      stats_.dual_resolves += ps.dual_resolves;
      return false;
    }
    stats_.lp_solves += ps.lp_solves;
    stats_.dual_resolves += ps.dual_resolves;
    return true;
  }

  void AddCandidate(CandidateSet& cs, IntegerPoint point) {
    if (!seen_.insert(point).second) return;
    if (trace_ != nullptr) {
      TraceEvent event = Event(TraceKind::kCandidate, level_);
      event.point = point;
      trace_->push_back(std::move(event));
    }
    cs.points.push_back(std::move(point));
    NoteMemory(cs);
    if (*visitor_ && (*visitor_)(cs.points.back())) stopped_ = true;
  }

  void NoteMemory(const CandidateSet& cs) {
    const auto list_size = static_cast<std::int64_t>(list_.size());
    level_stats_.peak_list_size =
        std::max(level_stats_.peak_list_size, list_size);
    stats_.peak_list_size = std::max(stats_.peak_list_size, list_size);
    const std::int64_t n = problem_.num_vars();
    const std::int64_t candidate_bytes =
        static_cast<std::int64_t>(sizeof(PartialCandidate)) +
        n * static_cast<std::int64_t>(sizeof(std::int64_t));
    const std::int64_t bytes =
        (list_size + static_cast<std::int64_t>(cs.points.size()) + 1) *
        candidate_bytes;
    stats_.peak_memory_bytes = std::max(stats_.peak_memory_bytes, bytes);
    if (config_.max_list_size > 0 && list_size > config_.max_list_size) {
      throw SearchAborted("candidate list exceeded " +
                              std::to_string(config_.max_list_size) +
                              " entries",
                          Incumbent(), stats_);
    }
  }

  const Problem& problem_;
  const std::vector<Projection>& root_projections_;
  const SearchConfig& config_;
  std::optional<Clock::time_point> deadline_;
  SearchStats& stats_;
  std::vector<TraceEvent>* trace_;
  const std::optional<IncumbentUpdate>* incumbent_;

  std::int64_t level_ = 0;
  const CandidateVisitor* visitor_ = nullptr;
  std::set<IntegerPoint> seen_;
  std::deque<PartialCandidate> list_;
  LevelStats level_stats_;
  bool stopped_ = false;
};

std::optional<Clock::time_point> Deadline(const SearchConfig& config) {
  if (config.time_limit_seconds <= 0) return std::nullopt;
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(
                                config.time_limit_seconds));
}

}  // namespace

bool CandidateSet::Contains(const IntegerPoint& x) const {
  return std::find(points.begin(), points.end(), x) != points.end();
}

std::optional<double> SearchStats::FinalLevelAv() const {
  if (levels.empty()) return std::nullopt;
  return levels.back().av_after_first_pass;
}

LevelInterval ComputeLevelInterval(const Problem& problem,
                                   const ProjectionOptions& options,
                                   ProjectionStats* stats) {
  LevelInterval interval;
  double extremes[2];
  const lp::Sense senses[2] = {lp::Sense::kMinimize, lp::Sense::kMaximize};
  for (int s = 0; s < 2; ++s) {
    const lp::LpSolution sol =
        lp::Solve(RelaxationModel(problem, senses[s]), nullptr,
                  options.simplex);
    if (stats != nullptr) ++stats->lp_solves;
    if (sol.status == lp::LpStatus::kInfeasible) throw RelaxationInfeasible();
    if (sol.status == lp::LpStatus::kUnbounded) {
      throw UnboundedRelaxation("objective is unbounded over the relaxation");
    }
    extremes[s] = sol.value;
  }
  const double lo_tol = options.range_tol * std::max(1.0, std::abs(extremes[0]));
  const double hi_tol = options.range_tol * std::max(1.0, std::abs(extremes[1]));
  interval.lo = ToLevel(std::ceil(extremes[0] - lo_tol));
  interval.hi = ToLevel(std::floor(extremes[1] + hi_tol));
  return interval;
}

CandidateSet InspectLevel(const Problem& problem, std::int64_t level,
                          const std::vector<Projection>& projections,
                          const SearchConfig& config, SearchStats* stats,
                          std::vector<TraceEvent>* trace,
                          const CandidateVisitor& visitor) {
  if (static_cast<int>(projections.size()) != problem.num_vars()) {
    throw InputError("projection count does not match the problem");
  }
  SearchStats local;
  LevelInspector inspector(problem, projections, config, Deadline(config),
                           stats != nullptr ? *stats : local, trace, nullptr);
  return inspector.Run(level, visitor);
}

int SelectSplitVariable(std::span<const RangeSet> ranges,
                        std::span<const std::int64_t> objective,
                        SplitPolicy policy) {
  if (ranges.empty()) throw std::invalid_argument("no active variables");
  const RangeSet* best = &ranges[0];
  for (const RangeSet& r : ranges.subspan(1)) {
    bool better = false;
    switch (policy) {
      case SplitPolicy::kMaxCoefficient:
        better = objective[r.var] > objective[best->var] ||
                 (objective[r.var] == objective[best->var] &&
                  r.var < best->var);
        break;
      case SplitPolicy::kMinRange:
        better = r.size() < best->size() ||
                 (r.size() == best->size() && r.var < best->var);
        break;
      case SplitPolicy::kFirstIndex:
        better = r.var < best->var;
        break;
    }
    if (better) best = &r;
  }
  return best->var;
}

PartialCandidate PopCandidate(std::deque<PartialCandidate>& list,
                              ListPolicy policy) {
  if (list.empty()) throw std::out_of_range("candidate list is empty");
  PartialCandidate out;
  if (policy == ListPolicy::kLifo) {
    out = std::move(list.back());
    list.pop_back();
  } else {
    out = std::move(list.front());
    list.pop_front();
  }
  return out;
}

Outcome Solve(const Problem& problem, const SearchConfig& config) {
  Outcome outcome;
  SearchStats& stats = outcome.stats;
  std::vector<TraceEvent>* trace =
      config.record_trace ? &outcome.trace : nullptr;
  const auto deadline = Deadline(config);

  if (problem.num_vars() == 0) {
    const IntegerPoint empty;
    if (IsFeasible(problem, empty)) {
      outcome.status = SearchStatus::kOptimal;
      outcome.value = Evaluate(problem, empty);
    }
    return outcome;
  }

  std::vector<Projection> projections;
  LevelInterval interval;
  ProjectionStats ps;
  try {
    projections = BuildProjections(problem, config.projection_mode,
                                   config.projection, &ps);
    interval = ComputeLevelInterval(problem, config.projection, &ps);
  } catch (const RelaxationInfeasible&) {
    stats.lp_solves += ps.lp_solves;
    stats.dual_resolves += ps.dual_resolves;
    outcome.status = SearchStatus::kInfeasible;
    return outcome;
  }
  stats.lp_solves += ps.lp_solves;
  stats.dual_resolves += ps.dual_resolves;

  std::optional<IncumbentUpdate> incumbent;
  std::int64_t best = interval.lo - 1;  // no incumbent yet
  LevelInspector inspector(problem, projections, config, deadline, stats,
                           trace, &incumbent);

  // Returns true when x certifies optimality at `level`.
  auto check = [&](const IntegerPoint& x, std::int64_t level) {
    ++stats.candidates_checked;
    if (!IsFeasible(problem, x)) return false;
    WideInt value = Evaluate(problem, x);
    if (value == level) {
      outcome.status = SearchStatus::kOptimal;
      outcome.point = x;
      outcome.value = std::move(value);
      return true;
    }
    if (value > best) {
      best = static_cast<std::int64_t>(value);
      incumbent = IncumbentUpdate{level, x, value};
      outcome.incumbents.push_back(*incumbent);
      if (trace != nullptr) {
        TraceEvent event = Event(TraceKind::kIncumbent, level, -1, best);
        event.point = x;
        trace->push_back(std::move(event));
      }
    }
    return false;
  };

  for (std::int64_t z = interval.hi;
       z > best || (z == best && !incumbent && z >= interval.lo); --z) {
    ++stats.levels_scanned;
    if (trace != nullptr) trace->push_back(Event(TraceKind::kLevel, z, -1, z));
    bool done = false;
    CandidateVisitor visitor;
    if (config.stream_check) {
      visitor = [&](const IntegerPoint& x) { return done = check(x, z); };
    }
    const CandidateSet cs = inspector.Run(z, visitor);
    if (!config.stream_check) {
      for (const IntegerPoint& x : cs.points) {
        if (check(x, z)) {
          done = true;
          break;
        }
      }
    }
    if (done) {
      if (trace != nullptr) {
        TraceEvent event = Event(TraceKind::kOptimal, z, -1, z);
        event.point = outcome.point;
        trace->push_back(std::move(event));
      }
      return outcome;
    }
  }
  if (incumbent) {
    outcome.status = SearchStatus::kOptimal;
    outcome.point = incumbent->point;
    outcome.value = incumbent->value;
  } else {
    outcome.status = SearchStatus::kInfeasible;
  }
  return outcome;
}

}  // namespace psplit
