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
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "psplit/bench.h"

namespace psplit {
namespace {

// Uniform integer on [lo, hi] by rejection, so the stream is identical on
// every standard library (std::uniform_int_distribution is not).
std::int64_t UniformInt(std::mt19937_64& rng, std::int64_t lo,
                        std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

std::int64_t Narrow(__int128 v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw InputError(std::string(what) + " exceeds 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

void GenSpec::Validate() const {
  if (n < 1) throw InputError("n must be at least 1");
  if (m < 1) throw InputError("m must be at least 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InputError("alpha must lie in (0, 1)");
  }
}

Rational DecimalAlpha(double alpha) {
  std::int64_t den = 1;
  for (int k = 0; k <= 15; ++k, den *= 10) {
    const std::int64_t num =
        static_cast<std::int64_t>(std::llround(alpha * static_cast<double>(den)));
    if (static_cast<double>(num) / static_cast<double>(den) == alpha) {
      const std::int64_t g = std::gcd(num, den);
      return {num / g, den / g};
    }
  }
  throw InputError("alpha has no decimal form with at most 15 digits");
}

Problem Generate(const GenSpec& spec) {
  spec.Validate();
  const Rational alpha = DecimalAlpha(spec.alpha);
  std::mt19937_64 rng(spec.seed);

  std::vector<std::vector<std::int64_t>> a(
      spec.m, std::vector<std::int64_t>(spec.n));
  for (auto& row : a) {
    for (auto& v : row) v = UniformInt(rng, 0, 1000);
  }

  std::vector<std::int64_t> c(spec.n);
  for (int j = 0; j < spec.n; ++j) {
    if (spec.correlation == Correlation::kUncorrelated) {
      c[j] = UniformInt(rng, 0, 1000);
    } else {
      std::int64_t column = 0;
      for (int i = 0; i < spec.m; ++i) column += a[i][j];
      const std::int64_t rounded = (2 * column + spec.m) / (2 * spec.m);
      c[j] = std::max<std::int64_t>(0, rounded + UniformInt(rng, -100, 100));
    }
  }

  std::vector<LinearRow> rows(spec.m);
  for (int i = 0; i < spec.m; ++i) {
    __int128 sum = 0;
    for (std::int64_t v : a[i]) sum += v;
    const __int128 scaled = sum * alpha.num;
    LinearRow& row = rows[i];
    if (spec.exact_b) {
      row.denominator = alpha.den;
      row.rhs = Narrow(scaled, "right-hand side");
      row.coefficients.resize(spec.n);
      for (int j = 0; j < spec.n; ++j) {
        row.coefficients[j] =
            Narrow(static_cast<__int128>(a[i][j]) * alpha.den, "coefficient");
      }
    } else {
      row.rhs = Narrow(scaled / alpha.den, "right-hand side");
      row.coefficients = std::move(a[i]);
    }
  }
  return Problem(std::move(c), 0, std::move(rows),
                 std::vector<std::optional<std::int64_t>>(spec.n, 1));
}

}  // namespace psplit
