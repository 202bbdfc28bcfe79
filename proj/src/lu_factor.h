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

#ifndef PSPLIT_LU_FACTOR_H_
#define PSPLIT_LU_FACTOR_H_

#include <span>
#include <vector>

namespace psplit::lp {

// Dense LU factorization of a square basis matrix with partial pivoting,
// followed by product-form eta updates:
//
//   B_k^{-1} = E_k ... E_1 B_0^{-1},   P B_0 = L U.
class LuFactor {
 public:
  // column(j, out) writes column j of the basis into out (size m). Returns
  // false when the matrix is numerically singular.
  template <typename ColumnFn>
  bool Factorize(int m, ColumnFn&& column, double pivot_tol);

  // v := B^{-1} v
  void Ftran(std::span<double> v) const;
  // v := B^{-T} v
  void Btran(std::span<double> v) const;
  // Records the basis change in which the variable basic in `row` is replaced
  // by a column whose FTRAN image is alpha.
  void Update(int row, std::span<const double> alpha);

  int size() const { return m_; }
  int num_updates() const { return static_cast<int>(etas_.size()); }

 private:
  struct Eta {
    int row;
    double pivot;
    std::vector<double> column;  // alpha with the pivot entry kept
  };

  bool Decompose(double pivot_tol);

  int m_ = 0;
  std::vector<double> lu_;  // row-major, L below the diagonal (unit), U above
  std::vector<int> perm_;   // row i of P B is row perm_[i] of B
  std::vector<Eta> etas_;
  mutable std::vector<double> work_;
};

template <typename ColumnFn>
bool LuFactor::Factorize(int m, ColumnFn&& column, double pivot_tol) {
  m_ = m;
  lu_.assign(static_cast<std::size_t>(m) * m, 0.0);
  etas_.clear();
  work_.assign(m, 0.0);
  std::vector<double> col(m);
  for (int j = 0; j < m; ++j) {
    column(j, std::span<double>(col));
    for (int i = 0; i < m; ++i) lu_[static_cast<std::size_t>(i) * m + j] = col[i];
  }
  return Decompose(pivot_tol);
}

}  // namespace psplit::lp

#endif  // PSPLIT_LU_FACTOR_H_
