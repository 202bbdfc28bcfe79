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

#include "psplit/model.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "psplit/errors.h"

namespace psplit {
namespace {

using Int128 = __int128;

// sum_j a[j] * x[j] with 128-bit accumulation; nullopt on overflow.
template <typename Coeffs>
std::optional<Int128> CheckedDot(const Coeffs& a, const IntegerPoint& x) {
  Int128 sum = 0;
  for (int j = 0; j < x.size(); ++j) {
    Int128 term;
    if (__builtin_mul_overflow(static_cast<Int128>(a[j]),
                               static_cast<Int128>(x[j]), &term) ||
        __builtin_add_overflow(sum, term, &sum)) {
      return std::nullopt;
    }
  }
  return sum;
}

template <typename Coeffs>
WideInt WideDot(const Coeffs& a, const IntegerPoint& x) {
  WideInt sum = 0;
  for (int j = 0; j < x.size(); ++j) sum += WideInt(a[j]) * WideInt(x[j]);
  return sum;
}

WideInt ToWide(Int128 v) {
  const bool negative = v < 0;
  unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(v)
                                   : static_cast<unsigned __int128>(v);
  WideInt out = static_cast<std::uint64_t>(mag >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(mag);
  return negative ? WideInt(-out) : out;
}

std::int64_t Gcd(std::int64_t a, std::int64_t b) {
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

void NormalizeRow(LinearRow& row) {
  std::int64_t g = Gcd(row.denominator, row.rhs);
  for (std::int64_t a : row.coefficients) {
    if (g == 1) break;
    g = Gcd(g, a);
  }
  if (g > 1) {
    row.denominator /= g;
    row.rhs /= g;
    for (std::int64_t& a : row.coefficients) a /= g;
  }
}

std::int64_t Narrow(Int128 v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error(std::string(what) + " exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

void CheckSize(const Problem& problem, const IntegerPoint& x) {
  if (x.size() != problem.num_vars()) {
    throw InputError("point has " + std::to_string(x.size()) +
                     " coordinates, problem has " +
                     std::to_string(problem.num_vars()) + " variables");
  }
}

}  // namespace

std::string IntegerPoint::ToString() const {
  std::string out = "(";
  for (int j = 0; j < size(); ++j) {
    if (j > 0) out += ',';
    out += std::to_string(coords_[j]);
  }
  return out + ")";
}

void PartialCandidate::Fix(int j, std::int64_t value) {
  if (value < 0) throw InputError("fixed values must be nonnegative");
  entries_[j] = value;
}

int PartialCandidate::NumActive() const {
  return static_cast<int>(
      std::count(entries_.begin(), entries_.end(), kUnfixed));
}

std::vector<int> PartialCandidate::ActiveVars() const {
  std::vector<int> active;
  for (int j = 0; j < size(); ++j) {
    if (!IsFixed(j)) active.push_back(j);
  }
  return active;
}

IntegerPoint PartialCandidate::ToPoint() const {
  if (!IsComplete()) throw std::logic_error("partial candidate not complete");
  return IntegerPoint(entries_);
}

std::string PartialCandidate::ToString() const {
  std::string out = "(";
  for (int j = 0; j < size(); ++j) {
    if (j > 0) out += ',';
    out += IsFixed(j) ? std::to_string(entries_[j]) : "?";
  }
  return out + ")";
}

Problem::Problem(std::vector<std::int64_t> objective, std::int64_t constant,
                 std::vector<LinearRow> rows,
                 std::vector<std::optional<std::int64_t>> var_upper)
    : objective_(std::move(objective)),
      constant_(constant),
      rows_(std::move(rows)),
      var_upper_(std::move(var_upper)) {
  const int n = num_vars();
  if (var_upper_.empty()) var_upper_.resize(n);
  if (static_cast<int>(var_upper_.size()) != n) {
    throw InputError("upper-bound vector has " +
                     std::to_string(var_upper_.size()) + " entries, expected " +
                     std::to_string(n));
  }
  for (const auto& u : var_upper_) {
    if (u && *u < 0) throw InputError("variable upper bounds must be >= 0");
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    LinearRow& row = rows_[i];
    if (static_cast<int>(row.coefficients.size()) != n) {
      throw InputError("row " + std::to_string(i) + " has " +
                       std::to_string(row.coefficients.size()) +
                       " coefficients, expected " + std::to_string(n));
    }
    if (row.denominator <= 0) {
      throw InputError("row " + std::to_string(i) +
                       " has a nonpositive denominator");
    }
    NormalizeRow(row);
  }
}

bool Problem::HasAnyVarUpper() const {
  return std::any_of(var_upper_.begin(), var_upper_.end(),
                     [](const auto& u) { return u.has_value(); });
}

bool Problem::IsBinary() const {
  return std::all_of(var_upper_.begin(), var_upper_.end(),
                     [](const auto& u) { return u && *u == 1; });
}

WideInt Evaluate(const Problem& problem, const IntegerPoint& x) {
  CheckSize(problem, x);
  const auto c = problem.objective();
  if (auto fast = CheckedDot(c, x)) {
    Int128 total;
    if (!__builtin_add_overflow(*fast, static_cast<Int128>(problem.constant()),
                                &total)) {
      return ToWide(total);
    }
  }
  return WideDot(c, x) + problem.constant();
}

bool IsFeasible(const Problem& problem, const IntegerPoint& x) {
  CheckSize(problem, x);
  for (int j = 0; j < x.size(); ++j) {
    if (x[j] < 0) return false;
    if (const auto u = problem.var_upper(j); u && x[j] > *u) return false;
  }
  for (const LinearRow& row : problem.rows()) {
    // Both sides share the positive row denominator.
    if (auto lhs = CheckedDot(row.coefficients, x)) {
      if (*lhs > row.rhs) return false;
    } else if (WideDot(row.coefficients, x) > row.rhs) {
      return false;
    }
  }
  return true;
}

IntegerPoint ReducedProblem::Lift(const IntegerPoint& completion) const {
  if (completion.size() != static_cast<int>(active_.size())) {
    throw InputError("completion has " + std::to_string(completion.size()) +
                     " coordinates, expected " +
                     std::to_string(active_.size()));
  }
  std::vector<std::int64_t> coords(fixing_.entries().begin(),
                                   fixing_.entries().end());
  for (std::size_t k = 0; k < active_.size(); ++k) {
    coords[active_[k]] = completion[static_cast<int>(k)];
  }
  return IntegerPoint(std::move(coords));
}

ReducedProblem Reduce(const Problem& problem, const PartialCandidate& fixing) {
  const int n = problem.num_vars();
  if (fixing.size() != n) {
    throw InputError("partial candidate has " + std::to_string(fixing.size()) +
                     " entries, problem has " + std::to_string(n) +
                     " variables");
  }
  ReducedProblem out;
  out.base_ = &problem;
  out.fixing_ = fixing;
  out.active_ = fixing.ActiveVars();
  const int k = static_cast<int>(out.active_.size());

  Int128 constant = problem.constant();
  std::vector<std::int64_t> objective(k);
  std::vector<std::optional<std::int64_t>> upper(k);
  for (int j = 0, a = 0; j < n; ++j) {
    if (fixing.IsFixed(j)) {
      constant += static_cast<Int128>(problem.objective(j)) * fixing.Value(j);
    } else {
      objective[a] = problem.objective(j);
      upper[a] = problem.var_upper(j);
      ++a;
    }
  }
  std::vector<LinearRow> rows;
  rows.reserve(problem.num_rows());
  for (const LinearRow& row : problem.rows()) {
    LinearRow reduced;
    reduced.denominator = row.denominator;
    reduced.coefficients.resize(k);
    Int128 rhs = row.rhs;
    for (int j = 0, a = 0; j < n; ++j) {
      if (fixing.IsFixed(j)) {
        rhs -= static_cast<Int128>(row.coefficients[j]) * fixing.Value(j);
      } else {
        reduced.coefficients[a++] = row.coefficients[j];
      }
    }
    reduced.rhs = Narrow(rhs, "derived right-hand side");
    rows.push_back(std::move(reduced));
  }
  out.reduced_ = Problem(std::move(objective),
                         Narrow(constant, "derived objective constant"),
                         std::move(rows), std::move(upper));
  return out;
}

}  // namespace psplit
