// Copyright 2026 The lvfi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lvfi/linalg.hpp"

#include <stdexcept>

namespace lvfi {

RMatrix make_matrix(const std::vector<std::vector<Rational>>& rows) {
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index m = n == 0 ? 0 : static_cast<Eigen::Index>(rows[0].size());
  RMatrix out(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != m)
      throw std::invalid_argument("ragged matrix rows");
    for (Eigen::Index j = 0; j < m; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

RVector make_vector(const std::vector<Rational>& entries) {
  RVector out(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) out(static_cast<Eigen::Index>(i)) = entries[i];
  return out;
}

// Gauss-Jordan elimination; exact, so any nonzero pivot will do.
RowEchelon row_echelon(const RMatrix& m) {
  RowEchelon out{m, {}};
  RMatrix& a = out.reduced;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = row; i < rows; ++i) {
      if (!a(i, col).is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) a.row(pivot).swap(a.row(row));
    Rational inv = Rational(1) / a(row, col);
    for (Eigen::Index j = col; j < cols; ++j) a(row, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      Rational factor = a(i, col);
      for (Eigen::Index j = col; j < cols; ++j) a(i, j) -= factor * a(row, j);
    }
    out.pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return out;
}

int rank(const RMatrix& m) { return static_cast<int>(row_echelon(m).pivots.size()); }

namespace {

void normalize(RVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!v(i).is_zero()) {
      Rational s = Rational(1) / v(i);
      for (Eigen::Index j = 0; j < v.size(); ++j) v(j) *= s;
      return;
    }
  }
}

}  // namespace

std::vector<RVector> nullspace(const RMatrix& m) {
  RowEchelon e = row_echelon(m);
  const Eigen::Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<RVector> basis;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    RVector v = RVector::Constant(cols, Rational(0));
    v(free) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      v(e.pivots[r]) = -e.reduced(static_cast<Eigen::Index>(r), free);
    }
    normalize(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<RVector> left_nullspace(const RMatrix& m) {
  RMatrix t = m.transpose();
  return nullspace(t);
}

LinearSolve solve_constrained(const RMatrix& m, const RVector& r) {
  if (r.size() != m.rows()) throw std::invalid_argument("right-hand side size mismatch");
  LinearSolve out;
  const Eigen::Index cols = m.cols();
  RMatrix aug(m.rows(), cols + 1);
  aug.leftCols(cols) = m;
  aug.col(cols) = r;
  RowEchelon e = row_echelon(aug);
  if (!e.pivots.empty() && e.pivots.back() == cols) {
    out.status = LinearSolve::Status::kInfeasible;
    for (const RVector& y : left_nullspace(m)) {
      Rational dot(0);
      for (Eigen::Index i = 0; i < y.size(); ++i) dot += y(i) * r(i);
      if (!dot.is_zero()) {
        out.certificate = y;
        break;
      }
    }
    return out;
  }
  out.solution = RVector::Constant(cols, Rational(0));
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    out.solution(e.pivots[k]) = e.reduced(static_cast<Eigen::Index>(k), cols);
  }
  out.basis = nullspace(m);
  out.status = out.basis.empty() ? LinearSolve::Status::kUnique
                                 : LinearSolve::Status::kUnderdetermined;
  return out;
}

}  // namespace lvfi
