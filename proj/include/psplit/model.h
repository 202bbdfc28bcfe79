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

// Pure integer linear programs of the form
//
//   maximize   c'x + h
//   subject to A x <= b,  0 <= x_j <= upper_j (optional),  x integer,
//
// with integer c, h and rational A, b. Each constraint row stores integer
// numerators over a single positive row denominator, so feasibility reduces to
// exact integer comparisons.

#ifndef PSPLIT_MODEL_H_
#define PSPLIT_MODEL_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boost/multiprecision/cpp_int.hpp"

namespace psplit {

using WideInt = boost::multiprecision::cpp_int;

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double ToDouble() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  // Value equality (cross-multiplied), not representation equality.
  friend bool SameValue(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den ==
           static_cast<__int128>(b.num) * a.den;
  }
};

// One "<=" constraint: sum_j (coefficients[j] / denominator) x_j <=
// rhs / denominator.
struct LinearRow {
  std::vector<std::int64_t> coefficients;
  std::int64_t rhs = 0;
  std::int64_t denominator = 1;

  Rational Coefficient(int j) const { return {coefficients[j], denominator}; }
  Rational Rhs() const { return {rhs, denominator}; }

  friend bool operator==(const LinearRow&, const LinearRow&) = default;
};

class IntegerPoint {
 public:
  IntegerPoint() = default;
  explicit IntegerPoint(std::vector<std::int64_t> coords)
      : coords_(std::move(coords)) {}
  IntegerPoint(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  int size() const { return static_cast<int>(coords_.size()); }
  std::int64_t operator[](int j) const { return coords_[j]; }
  std::int64_t& operator[](int j) { return coords_[j]; }
  std::span<const std::int64_t> coords() const { return coords_; }

  std::string ToString() const;

  friend auto operator<=>(const IntegerPoint&, const IntegerPoint&) = default;

 private:
  std::vector<std::int64_t> coords_;
};

// A point with some coordinates fixed to nonnegative integers and the rest
// open. The open coordinates are the active variables of the candidate.
class PartialCandidate {
 public:
  static constexpr std::int64_t kUnfixed = -1;

  PartialCandidate() = default;
  explicit PartialCandidate(int num_vars, std::int64_t origin_level = 0)
      : entries_(num_vars, kUnfixed), origin_level_(origin_level) {}

  int size() const { return static_cast<int>(entries_.size()); }
  bool IsFixed(int j) const { return entries_[j] != kUnfixed; }
  std::int64_t Value(int j) const { return entries_[j]; }
  void Fix(int j, std::int64_t value);
  void Unfix(int j) { entries_[j] = kUnfixed; }

  int NumActive() const;
  std::vector<int> ActiveVars() const;
  bool IsComplete() const { return NumActive() == 0; }
  // Requires IsComplete().
  IntegerPoint ToPoint() const;

  std::int64_t origin_level() const { return origin_level_; }
  void set_origin_level(std::int64_t level) { origin_level_ = level; }

  std::span<const std::int64_t> entries() const { return entries_; }
  std::size_t MemoryBytes() const {
    return sizeof(*this) + entries_.size() * sizeof(std::int64_t);
  }

  // "(0,?,1)".
  std::string ToString() const;

  friend bool operator==(const PartialCandidate& a,
                         const PartialCandidate& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<std::int64_t> entries_;
  std::int64_t origin_level_ = 0;
};

// Immutable instance. Rows are normalized on construction so that
// gcd(denominator, rhs, coefficients...) == 1; two problems compare equal iff
// they describe the same data in that normal form.
class Problem {
 public:
  Problem() = default;
  // Throws InputError on inconsistent dimensions, a nonpositive denominator
  // or a negative upper bound. An empty var_upper means no explicit bounds.
  Problem(std::vector<std::int64_t> objective, std::int64_t constant,
          std::vector<LinearRow> rows,
          std::vector<std::optional<std::int64_t>> var_upper = {});

  int num_vars() const { return static_cast<int>(objective_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  std::span<const std::int64_t> objective() const { return objective_; }
  std::int64_t objective(int j) const { return objective_[j]; }
  std::int64_t constant() const { return constant_; }
  const std::vector<LinearRow>& rows() const { return rows_; }
  const LinearRow& row(int i) const { return rows_[i]; }
  std::optional<std::int64_t> var_upper(int j) const { return var_upper_[j]; }
  std::span<const std::optional<std::int64_t>> var_upper() const {
    return var_upper_;
  }
  bool HasAnyVarUpper() const;

  // Every variable carries the explicit bound x_j <= 1.
  bool IsBinary() const;

  friend bool operator==(const Problem&, const Problem&) = default;

 private:
  std::vector<std::int64_t> objective_;
  std::int64_t constant_ = 0;
  std::vector<LinearRow> rows_;
  std::vector<std::optional<std::int64_t>> var_upper_;
};

// z(x) = c'x + h in exact arithmetic. Throws InputError on size mismatch.
WideInt Evaluate(const Problem& problem, const IntegerPoint& x);

// Exact check of A x <= b, x >= 0 and x_j <= upper_j.
bool IsFeasible(const Problem& problem, const IntegerPoint& x);

// The instance obtained by substituting the fixed coordinates of a partial
// candidate. Keeps every row of the base problem (rows may become constant).
class ReducedProblem {
 public:
  const Problem& base() const { return *base_; }
  const PartialCandidate& fixing() const { return fixing_; }
  // The instance over the active variables, in increasing original index.
  const Problem& problem() const { return reduced_; }
  // active_vars()[k] is the original index of reduced variable k.
  std::span<const int> active_vars() const { return active_; }

  Rational DerivedRhs(int i) const { return reduced_.row(i).Rhs(); }
  std::int64_t DerivedConstant() const { return reduced_.constant(); }

  // Merges a completion of the active variables with the fixed part.
  IntegerPoint Lift(const IntegerPoint& completion) const;

 private:
  friend ReducedProblem Reduce(const Problem&, const PartialCandidate&);

  const Problem* base_ = nullptr;
  PartialCandidate fixing_;
  Problem reduced_;
  std::vector<int> active_;
};

// The base problem must outlive the result. Throws InputError if the fixing
// has the wrong size or a fixed value is negative, and std::overflow_error if
// a derived coefficient leaves the 64-bit range.
ReducedProblem Reduce(const Problem& problem, const PartialCandidate& fixing);

// Text instance format:
//
//   pilp <n> <m>
//   obj <h> <c_1> ... <c_n>
//   row <b> <a_1> ... <a_n>          (m times; entries "num" or "num/den")
//   upper <u_1> ... <u_n>            (optional; "*" for no bound)
//
// '#' starts a comment. Throws InputError with line/column on bad input.
Problem ParseInstance(std::string_view text);
std::string SerializeInstance(const Problem& problem);

Problem ReadInstanceFile(const std::string& path);
void WriteInstanceFile(const Problem& problem, const std::string& path);

}  // namespace psplit

#endif  // PSPLIT_MODEL_H_
