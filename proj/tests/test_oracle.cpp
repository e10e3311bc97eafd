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

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "lvfi/oracle.hpp"
#include "lvfi/rule.hpp"
#include "test_util.hpp"
#include "transcriptions.hpp"

namespace lvfi {
namespace {

using testing::make_system;
using testing::q;

ExactSystem all_constant_3d() {
  return make_system({"0", "0", "0"}, {{"1", "-2", "-2"}, {"-2", "1", "-2"}, {"-2", "-2", "1"}},
                     {"1", "1", "1"});
}

TEST(Residual2d, VolterraFactorVanishes) {
  ExactSystem s = testing::volterra();
  // R = 1/(x1 x2): beta = -a12, gamma = -a21.
  LaurentPoly r = residual_2d(s, 0, -s.A(0, 1), -s.A(1, 0));
  EXPECT_TRUE(r.is_zero()) << r.to_string({"x1", "x2"});
}

TEST(Residual2d, WrongExponentLeavesTerms) {
  ExactSystem s = testing::volterra();
  EXPECT_FALSE(residual_2d(s, 0, 0, 0).is_zero());
}

TEST(Residual2d, ConstantTermCoefficient) {
  ExactSystem s = make_system({"1", "2"}, {{"3", "-2"}, {"5", "1"}}, {"7", "0"});
  // With alpha = gamma = 0 only f1 beta/(a12 x1) produces x1^(-1).
  LaurentPoly r = residual_2d(s, 0, 1, 0);
  EXPECT_EQ(r.coefficient({-1, 0}), q("7") / q("-2"));
}

TEST(Residual2d, UndefinedWithoutCoupling) {
  ExactSystem s = make_system({"1", "2"}, {{"3", "0"}, {"5", "1"}}, {"0", "0"});
  EXPECT_THROW(residual_2d(s, 0, 1, 1), std::domain_error);
}

TEST(Residual3d, ConstantSkewOnAllConstantTermSystem) {
  std::vector<LaurentPoly> r = residual_3d(all_constant_3d(), Ansatz::kT1, {1, -1, 1}, {1, 1, 1});
  ASSERT_EQ(r.size(), 3u);
  for (const LaurentPoly& p : r) EXPECT_TRUE(p.is_zero());
  EXPECT_TRUE(is_integrating_factor(all_constant_3d(),
                                    IntegratingFactor{Ansatz::kT1, {1, -1, 1}, {1, 1, 1}, {}, {}}));
}

TEST(Residual3d, WrongSkewFails) {
  std::vector<LaurentPoly> r = residual_3d(all_constant_3d(), Ansatz::kT1, {1, 1, 1}, {1, 1, 1});
  bool all_zero = true;
  for (const LaurentPoly& p : r) all_zero = all_zero && p.is_zero();
  EXPECT_FALSE(all_zero);
}

TEST(Residual3d, LinearInSkewEntries) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    ExactSystem s = testing::random_system(3, rng);
    std::array<Rational, 3> abg{random_rational(rng), random_rational(rng), random_rational(rng)};
    std::array<Rational, 3> twice{2 * abg[0], 2 * abg[1], 2 * abg[2]};
    std::vector<Rational> l{random_rational(rng), random_rational(rng), random_rational(rng)};
    for (Ansatz a : {Ansatz::kT1, Ansatz::kT2}) {
      auto r1 = residual_3d(s, a, abg, l);
      auto r2 = residual_3d(s, a, twice, l);
      for (int k = 0; k < 3; ++k) EXPECT_EQ(r2[k], r1[k] * Rational(2));
    }
  }
}

TEST(SolveExponents, RecoversVolterraExponents) {
  IntegratingFactor shape;
  shape.ansatz = Ansatz::kPlanar;
  shape.l = {0, 0};
  ExponentSolve sol = solve_exponents(testing::volterra(), shape, {std::nullopt, std::nullopt});
  ASSERT_EQ(sol.status, LinearSolve::Status::kUnique);
  EXPECT_EQ(sol.l[0], 0);
  EXPECT_EQ(sol.l[1], 0);
}

TEST(DeriveConditions, PlanarMatchesTranscription) {
  auto derived = derive_conditions(Ansatz::kPlanar, 2, std::nullopt);
  auto m = testing::match_transcription(derived, testing::planar_transcription(), 2);
  EXPECT_TRUE(m.ok());
  for (const auto& u : m.unmatched_derived) ADD_FAILURE() << "derived only: " << u;
  for (const auto& u : m.unmatched_transcribed) ADD_FAILURE() << "transcribed only: " << u;
}

TEST(DeriveConditions, ConstantSkewAtUnitExponents) {
  auto derived = derive_conditions(Ansatz::kT1, 3, std::vector<Rational>{1, 1, 1});
  auto m = testing::match_transcription(derived, testing::t1_transcription(), 3);
  for (const auto& u : m.unmatched_derived) ADD_FAILURE() << "derived only: " << u;
  for (const auto& u : m.unmatched_transcribed) ADD_FAILURE() << "transcribed only: " << u;
}

TEST(DeriveConditions, ConstantSkewForcesUnitExponents) {
  // Every x_i^2/x_j coefficient is (l_k - 1) times a parameter monomial, and
  // each l_k occurs.
  ParamSpace space(3);
  auto derived = derive_conditions(Ansatz::kT1, 3, std::nullopt);
  std::array<bool, 3> forced{false, false, false};
  for (const DerivedCondition& d : derived) {
    int twos = 0, neg = 0;
    for (int v : d.monomial) {
      twos += v == 2;
      neg += v == -1;
    }
    if (twos != 1 || neg != 1) continue;
    bool matched = false;
    for (int k = 0; k < 3; ++k) {
      int lk = *space.index("l" + std::to_string(k + 1));
      if (!d.equation.substitute(lk, 1).is_zero()) continue;
      LaurentPoly rest = d.equation.substitute(lk, 0);
      if (rest.is_monomial()) {
        forced[k] = true;
        matched = true;
      }
    }
    EXPECT_TRUE(matched) << d.equation.to_string(testing::space_names(space));
  }
  EXPECT_TRUE(forced[0] && forced[1] && forced[2]);
}

TEST(DeriveConditions, LinearSkewMatchesTranscription) {
  auto derived = derive_conditions(Ansatz::kT2, 3, std::nullopt);
  auto m = testing::match_transcription(derived, testing::t2_transcription(), 3);
  for (const auto& u : m.unmatched_derived) ADD_FAILURE() << "derived only: " << u;
  for (const auto& u : m.unmatched_transcribed) ADD_FAILURE() << "transcribed only: " << u;
}

TEST(Proportional, ScaleAndZero) {
  ParamSpace space(2);
  LaurentPoly p = parameters_only(parse_laurent("alpha*a11 + b1", space), 2);
  EXPECT_TRUE(proportional(p, p * q("-3/2")));
  EXPECT_FALSE(proportional(p, p * Rational(0)));
  EXPECT_FALSE(proportional(p, parameters_only(parse_laurent("alpha*a11 - b1", space), 2)));
}

}  // namespace
}  // namespace lvfi
