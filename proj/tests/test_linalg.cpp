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

#include <random>

#include <gtest/gtest.h>

#include "lvfi/linalg.hpp"
#include "test_util.hpp"

namespace lvfi {
namespace {

using testing::q;

RMatrix random_matrix(int rows, int cols, int rank_cap, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  RMatrix left(rows, rank_cap), right(rank_cap, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < rank_cap; ++k) left(i, k) = d(rng);
  for (int k = 0; k < rank_cap; ++k)
    for (int j = 0; j < cols; ++j) right(k, j) = Rational(d(rng)) / Rational(1 + (j % 3));
  return left * right;
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(RMatrix::Zero(3, 4)), 0);
  EXPECT_EQ(rank(RMatrix::Identity(3, 3)), 3);
  EXPECT_EQ(rank(make_matrix({{1, 2}, {2, 4}, {3, 6}})), 1);
}

TEST(Solve, ConsistentOverdetermined) {
  RMatrix m = make_matrix({{1, 0}, {0, 1}, {1, 1}});
  LinearSolve r = solve_constrained(m, make_vector({1, 2, 3}));
  ASSERT_EQ(r.status, LinearSolve::Status::kUnique);
  EXPECT_EQ(r.solution, make_vector({1, 2}));
}

TEST(Solve, InfeasibleWithCertificate) {
  RMatrix m = make_matrix({{1, 0}, {0, 1}, {1, 1}});
  RVector rhs = make_vector({1, 2, 4});
  LinearSolve r = solve_constrained(m, rhs);
  ASSERT_EQ(r.status, LinearSolve::Status::kInfeasible);
  // Any certificate is a multiple of (1, 1, -1).
  RVector y = r.certificate;
  EXPECT_EQ(y * (Rational(1) / y(0)), make_vector({1, 1, -1}));
  EXPECT_TRUE((y.transpose() * m).isZero());
  EXPECT_NE(y.dot(rhs), 0);
}

// Exponent system of the planar case without constant terms, with
// a = (1, 2; 3, 1) and b on the solvability surface.
TEST(Solve, PlanarExponentSystem) {
  Rational a11 = 1, a12 = 2, a21 = 3, a22 = 1, b1 = 1, b2 = -2;
  ASSERT_EQ(b1 * a22 * (a21 - a11) + b2 * a11 * (a12 - a22), 0);
  RMatrix m(3, 2);
  m << a11, a21, a12, a22, b1, b2;
  LinearSolve r = solve_constrained(m, make_vector({-a11, -a22, 0}));
  ASSERT_EQ(r.status, LinearSolve::Status::kUnique);
  Rational det = a11 * a22 - a12 * a21;
  EXPECT_EQ(r.solution(0), a22 * (a21 - a11) / det);
  EXPECT_EQ(r.solution(1), a11 * (a12 - a22) / det);
  EXPECT_EQ(r.solution(0), q("-2/5"));
  EXPECT_EQ(r.solution(1), q("-1/5"));
}

TEST(Solve, Underdetermined) {
  RMatrix m = make_matrix({{1, 1, 0}, {2, 2, 0}});
  LinearSolve r = solve_constrained(m, make_vector({3, 6}));
  ASSERT_EQ(r.status, LinearSolve::Status::kUnderdetermined);
  EXPECT_EQ(m * r.solution, make_vector({3, 6}));
  EXPECT_EQ(r.basis.size(), 2u);
  EXPECT_THROW(solve_constrained(m, make_vector({1, 2, 3})), std::invalid_argument);
}

TEST(Nullspace, Examples) {
  EXPECT_TRUE(nullspace(RMatrix::Identity(3, 3)).empty());
  auto n = nullspace(make_matrix({{1, 1}}));
  ASSERT_EQ(n.size(), 1u);
  EXPECT_EQ(n[0], make_vector({1, -1}));
}

// Homogeneous system in (alpha, beta, gamma) for all constant terms nonzero,
// b = 0 and a_ij = -2 a_jj with unit diagonal.
TEST(Nullspace, AllConstantTermsCaseThree) {
  Rational a11 = 1, a22 = 1, a33 = 1;
  Rational a12 = -2 * a22, a13 = -2 * a33, a21 = -2 * a11, a23 = -2 * a33, a31 = -2 * a11,
           a32 = -2 * a22;
  // Rows are the three mixed conditions of the T1 system.
  RMatrix m(3, 3);
  m << -a13, a12, a21 + a31, a23, a12 + a32, a21, a13 + a23, a32, -a31;
  auto n = nullspace(m);
  ASSERT_EQ(n.size(), 1u);
  EXPECT_EQ(n[0], make_vector({a11 * a22, -a11 * a33, a22 * a33}));
  EXPECT_EQ(n[0], make_vector({1, -1, 1}));
}

TEST(Properties, RankNullityAndCertificates) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> dim(1, 6), d(-3, 3);
  for (int k = 0; k < 300; ++k) {
    int rows = dim(rng), cols = dim(rng);
    RMatrix m = random_matrix(rows, cols, 1 + k % 4, rng);
    auto basis = nullspace(m);
    EXPECT_EQ(rank(m) + static_cast<int>(basis.size()), cols);
    for (const RVector& v : basis) {
      EXPECT_TRUE((m * v).isZero());
      int first = 0;
      while (v(first) == 0) ++first;
      EXPECT_EQ(v(first), 1);
    }
    for (const RVector& y : left_nullspace(m)) EXPECT_TRUE((y.transpose() * m).isZero());
    RVector rhs(rows);
    for (int i = 0; i < rows; ++i) rhs(i) = d(rng);
    LinearSolve r = solve_constrained(m, rhs);
    if (r.status == LinearSolve::Status::kInfeasible) {
      EXPECT_TRUE((r.certificate.transpose() * m).isZero());
      EXPECT_NE(r.certificate.dot(rhs), 0);
    } else {
      EXPECT_EQ(m * r.solution, rhs);
    }
  }
}

}  // namespace
}  // namespace lvfi
