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

#ifndef PSPLIT_TESTS_TEST_UTIL_H_
#define PSPLIT_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "psplit/bench.h"
#include "psplit/model.h"

namespace psplit::testing {

// max 9x1 + 3x2 + 8x3 s.t. 10x1 + 5x2 + 7x3 <= 12, x integer >= 0.
inline Problem Ukp() {
  return Problem({9, 3, 8}, 0, {LinearRow{{10, 5, 7}, 12, 1}});
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::int64_t Int(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  double Real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  bool Coin(double p = 0.5) { return Real(0.0, 1.0) < p; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Binary multidimensional knapsack from the instance generator.
inline Problem RandomMkp(std::uint64_t seed, int n, int m, double alpha = 0.5,
                         Correlation corr = Correlation::kUncorrelated) {
  GenSpec spec;
  spec.n = n;
  spec.m = m;
  spec.alpha = alpha;
  spec.correlation = corr;
  spec.seed = seed;
  return Generate(spec);
}

// General-integer instance with explicit bounds x_j <= u_j, u_j in
// [1, max_upper]. Rows mix signs and denominators, so neither the zero point
// nor any other point need be feasible; objective coefficients may be
// negative.
inline Problem RandomBoundedInstance(std::uint64_t seed, int n, int m,
                                     int max_upper = 4) {
  Rng rng(seed);
  std::vector<std::int64_t> c(n);
  for (auto& v : c) v = rng.Int(-4, 12);
  const std::int64_t h = rng.Int(-5, 5);
  std::vector<LinearRow> rows(m);
  for (LinearRow& row : rows) {
    row.denominator = rng.Coin(0.3) ? rng.Int(2, 5) : 1;
    row.coefficients.resize(n);
    std::int64_t total = 0;
    for (auto& a : row.coefficients) {
      a = rng.Int(-3 * row.denominator, 9 * row.denominator);
      total += std::max<std::int64_t>(a, 0);
    }
    row.rhs = rng.Int(-row.denominator, total);
  }
  std::vector<std::optional<std::int64_t>> upper(n);
  for (auto& u : upper) u = rng.Int(1, max_upper);
  return Problem(std::move(c), h, std::move(rows), std::move(upper));
}

// Nonnegative rows without explicit bounds; bounded because every column
// has a positive entry in some row.
inline Problem RandomPackingInstance(std::uint64_t seed, int n, int m) {
  Rng rng(seed);
  std::vector<std::int64_t> c(n);
  for (auto& v : c) v = rng.Int(0, 20);
  std::vector<LinearRow> rows(m);
  for (LinearRow& row : rows) {
    row.coefficients.resize(n);
    std::int64_t total = 0;
    for (auto& a : row.coefficients) {
      a = rng.Int(0, 12);
      total += a;
    }
    row.rhs = rng.Int(total / 4, total / 2 + 1);
  }
  for (int j = 0; j < n; ++j) {
    bool covered = false;
    for (const LinearRow& row : rows) covered |= row.coefficients[j] > 0;
    if (!covered) rows[0].coefficients[j] = 1 + rng.Int(0, 5);
  }
  return Problem(std::move(c), rng.Int(0, 3), std::move(rows));
}

// Every lattice point of the box, in lexicographic order.
inline std::vector<IntegerPoint> BoxPoints(
    const std::vector<std::int64_t>& box) {
  std::vector<IntegerPoint> out;
  std::vector<std::int64_t> x(box.size(), 0);
  while (true) {
    out.emplace_back(x);
    int j = static_cast<int>(box.size()) - 1;
    while (j >= 0 && x[j] == box[j]) x[j--] = 0;
    if (j < 0) break;
    ++x[j];
  }
  return out;
}

}  // namespace psplit::testing

#endif  // PSPLIT_TESTS_TEST_UTIL_H_
