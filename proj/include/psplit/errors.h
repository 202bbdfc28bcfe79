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

#ifndef PSPLIT_ERRORS_H_
#define PSPLIT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace psplit {

// Malformed instance data: syntax errors, inconsistent dimensions, values
// outside the supported domain. Parse errors carry a 1-based position.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what, int line = 0, int column = 0)
      : std::invalid_argument(Format(what, line, column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string Format(const std::string& what, int line, int column) {
    if (line <= 0) return what;
    return "line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + what;
  }

  int line_;
  int column_;
};

// The LP relaxation of the problem has no feasible point.
class RelaxationInfeasible : public std::runtime_error {
 public:
  RelaxationInfeasible() : std::runtime_error("LP relaxation is infeasible") {}
};

// The LP relaxation is unbounded in some direction. Instances are required to
// have a bounded relaxation, so this is reported as an input error upstream.
class UnboundedRelaxation : public std::runtime_error {
 public:
  explicit UnboundedRelaxation(const std::string& what)
      : std::runtime_error(what) {}
};

// A configured cap (enumeration size, node count, list size, wall time) was
// hit before the computation could finish.
class ResourceLimit : public std::runtime_error {
 public:
  explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace psplit

#endif  // PSPLIT_ERRORS_H_
