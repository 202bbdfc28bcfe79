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

#include "lu_factor.h"

#include <cmath>
#include <numeric>
#include <utility>

namespace psplit::lp {

bool LuFactor::Decompose(double pivot_tol) {
  const int m = m_;
  perm_.resize(m);
  std::iota(perm_.begin(), perm_.end(), 0);
  auto at = [&](int i, int j) -> double& {
    return lu_[static_cast<std::size_t>(i) * m + j];
  };
  for (int k = 0; k < m; ++k) {
    int pivot_row = k;
    double best = std::abs(at(k, k));
    for (int i = k + 1; i < m; ++i) {
      if (std::abs(at(i, k)) > best) {
        best = std::abs(at(i, k));
        pivot_row = i;
      }
    }
    if (best <= pivot_tol) return false;
    if (pivot_row != k) {
      for (int j = 0; j < m; ++j) std::swap(at(k, j), at(pivot_row, j));
      std::swap(perm_[k], perm_[pivot_row]);
    }
    const double inv = 1.0 / at(k, k);
    for (int i = k + 1; i < m; ++i) {
      const double f = at(i, k) * inv;
      at(i, k) = f;
      if (f == 0.0) continue;
      for (int j = k + 1; j < m; ++j) at(i, j) -= f * at(k, j);
    }
  }
  return true;
}

void LuFactor::Ftran(std::span<double> v) const {
  const int m = m_;
  // Solve L U y = P v.
  for (int i = 0; i < m; ++i) work_[i] = v[perm_[i]];
  for (int i = 0; i < m; ++i) {
    double s = work_[i];
    const double* row = &lu_[static_cast<std::size_t>(i) * m];
    for (int j = 0; j < i; ++j) s -= row[j] * work_[j];
    work_[i] = s;
  }
  for (int i = m - 1; i >= 0; --i) {
    double s = work_[i];
    const double* row = &lu_[static_cast<std::size_t>(i) * m];
    for (int j = i + 1; j < m; ++j) s -= row[j] * work_[j];
    work_[i] = s / row[i];
  }
  for (int i = 0; i < m; ++i) v[i] = work_[i];
  for (const Eta& eta : etas_) {
    const double yr = v[eta.row] / eta.pivot;
    if (yr == 0.0) {
      v[eta.row] = 0.0;
      continue;
    }
    for (int i = 0; i < m; ++i) {
      if (i != eta.row) v[i] -= eta.column[i] * yr;
    }
    v[eta.row] = yr;
  }
}

void LuFactor::Btran(std::span<double> v) const {
  const int m = m_;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double s = v[it->row];
    for (int i = 0; i < m; ++i) {
      if (i != it->row) s -= v[i] * it->column[i];
    }
    v[it->row] = s / it->pivot;
  }
  // B_0^T = U^T L^T P: solve U^T w = v, L^T t = w, then v = P^T t.
  for (int i = 0; i < m; ++i) work_[i] = v[i];
  for (int i = 0; i < m; ++i) {
    double s = work_[i];
    for (int j = 0; j < i; ++j) s -= lu_[static_cast<std::size_t>(j) * m + i] * work_[j];
    work_[i] = s / lu_[static_cast<std::size_t>(i) * m + i];
  }
  for (int i = m - 1; i >= 0; --i) {
    double s = work_[i];
    for (int j = i + 1; j < m; ++j) s -= lu_[static_cast<std::size_t>(j) * m + i] * work_[j];
    work_[i] = s;
  }
  for (int i = 0; i < m; ++i) v[perm_[i]] = work_[i];
}

void LuFactor::Update(int row, std::span<const double> alpha) {
  etas_.push_back({row, alpha[row], std::vector<double>(alpha.begin(), alpha.end())});
}

}  // namespace psplit::lp
