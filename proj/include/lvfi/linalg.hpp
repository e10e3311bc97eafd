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

#pragma once

#include <vector>

#include <Eigen/Core>

#include "lvfi/rational.hpp"

namespace lvfi {

using RMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

RMatrix make_matrix(const std::vector<std::vector<Rational>>& rows);
RVector make_vector(const std::vector<Rational>& entries);

// Reduced row echelon form with the pivot column of each nonzero row.
struct RowEchelon {
  RMatrix reduced;
  std::vector<int> pivots;
};
RowEchelon row_echelon(const RMatrix& m);

int rank(const RMatrix& m);

// Basis of {v : m v = 0}. Each vector has its first nonzero entry equal to 1.
std::vector<RVector> nullspace(const RMatrix& m);

// Basis of {y : y^T m = 0}, normalized like nullspace().
std::vector<RVector> left_nullspace(const RMatrix& m);

struct LinearSolve {
  enum class Status { kUnique, kUnderdetermined, kInfeasible };
  Status status = Status::kInfeasible;
  RVector solution;            // particular solution, free unknowns set to 0
  std::vector<RVector> basis;  // nullspace of m when underdetermined
  RVector certificate;         // y with y^T m = 0 and y.r != 0 when infeasible
};

// Solves m x = r exactly. Throws std::invalid_argument on size mismatch.
LinearSolve solve_constrained(const RMatrix& m, const RVector& r);

}  // namespace lvfi
