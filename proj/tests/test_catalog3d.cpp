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

#include "lvfi/catalog3d.hpp"
#include "lvfi/detect.hpp"
#include "lvfi/oracle.hpp"
#include "lvfi/verify.hpp"
#include "test_util.hpp"

namespace lvfi {
namespace {

using testing::make_system;

ExactSystem all_constant_3d() {
  return make_system({"0", "0", "0"}, {{"1", "-2", "-2"}, {"-2", "1", "-2"}, {"-2", "-2", "1"}},
                     {"1", "1", "1"});
}

const Detection* find(const DetectionResult& r, const std::string& id) {
  for (const Detection& d : r.detections)
    if (d.rule_id == id) return &d;
  return nullptr;
}

TEST(TermTable, ZeroWeights) {
  std::mt19937_64 rng(3);
  TermTable t = term_table({0, 0, 0}, testing::random_system(3, rng));
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(t.B[k], 0);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(t.A(k, i), 0);
  }
}

TEST(TermTable, UnitAlpha) {
  std::mt19937_64 rng(4);
  ExactSystem s = testing::random_system(3, rng);
  TermTable t = term_table({1, 0, 0}, s);
  EXPECT_EQ(t.B[0], s.b(0));
  EXPECT_EQ(t.B[1], s.b(1));
  EXPECT_EQ(t.B[2], 0);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(t.A(0, i), s.A(0, i));
    EXPECT_EQ(t.A(1, i), s.A(1, i));
    EXPECT_EQ(t.A(2, i), 0);
  }
}

TEST(TermTable, IdentitiesHoldExactly) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 1000; ++k) {
    ExactSystem s = testing::random_system(3, rng);
    Rational al = random_rational(rng), be = random_rational(rng), ga = random_rational(rng);
    TermTable t = term_table({al, be, ga}, s);
    EXPECT_EQ(t.B[0] * be + t.B[1] * ga - t.B[2] * al, 0);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(t.A(0, i) * be + t.A(1, i) * ga - t.A(2, i) * al, 0);
  }
}

TEST(TermTable, RejectsPlanarSystem) {
  EXPECT_ANY_THROW(term_table({1, 0, 0}, testing::volterra()));
}

TEST(SolveAbg, NoConstraintsGivesFullBasis) {
  EXPECT_EQ(solve_abg(std::vector<std::string>{}, all_constant_3d()).size(), 3u);
}

TEST(SolveAbg, TwoByTwoBlockNeedsVanishingMinor) {
  // a2i alpha + a3i beta = 0 for i = 2, 3 with gamma pinned.
  ExactSystem singular = make_system({"0", "0", "0"}, {{"1", "0", "0"}, {"0", "1", "2"}, {"0", "2", "4"}},
                                     {"0", "0", "0"});
  auto basis = solve_abg({"A22", "A23", "gamma"}, singular);
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0][0], 1);
  EXPECT_EQ(basis[0][1] * 2, -1);
  EXPECT_EQ(basis[0][2], 0);

  ExactSystem regular = make_system({"0", "0", "0"}, {{"1", "0", "0"}, {"0", "1", "2"}, {"0", "3", "4"}},
                                    {"0", "0", "0"});
  EXPECT_TRUE(solve_abg({"A22", "A23", "gamma"}, regular).empty());
}

TEST(SolveAbg, AllConstantTermCase) {
  const Rule& rule = find_rule("R3D-N3");
  auto basis = solve_abg(rule, all_constant_3d());
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0][0], 1);
  EXPECT_EQ(basis[0][1], -1);
  EXPECT_EQ(basis[0][2], 1);
}

TEST(Catalog3d, AllConstantTermsFullMatrix) {
  ExactSystem s = all_constant_3d();
  DetectionResult r = detect(s);
  const Detection* d = find(r, "R3D-N3");
  ASSERT_NE(d, nullptr);
  Expr want = canonical_integral(
      testing::parse_h("x1^2*x2 - x1^2*x3 - x1*x2^2 + x1*x3^2 + x2^2*x3 - x2*x3^2", 3), 3);
  EXPECT_EQ(to_string(d->integral), to_string(want));
  EXPECT_LE(lie_check(d->integral, LVSystem::exact(s)), 1e-10);
}

TEST(Catalog3d, EmbeddedPlanarBlock) {
  // a13 = a23 = 0, e3 = 0 and the planar polynomial-integral conditions.
  ExactSystem s = make_system({"1", "-1", "2"}, {{"1", "-2", "0"}, {"-2", "1", "0"}, {"3", "-1", "2"}},
                              {"5", "7", "0"});
  DetectionResult r = detect(s);
  const Detection* d = find(r, "R3D-P1");
  ASSERT_NE(d, nullptr);
  Expr want = canonical_integral(testing::parse_h("x1*x2 + x1^2*x2 - x1*x2^2 + 5*x2 - 7*x1", 3), 3);
  EXPECT_EQ(to_string(d->integral), to_string(want));
}

TEST(Catalog3d, ProportionalRateRows) {
  // Row 1 of (b|A) is twice row 2, no constant terms.
  ExactSystem s = make_system({"2", "1", "3"}, {{"2", "4", "-2"}, {"1", "2", "-1"}, {"1", "-1", "2"}},
                              {"0", "0", "0"});
  DetectionResult r = detect(s);
  const Detection* d = find(r, "R3D-Z5");
  ASSERT_NE(d, nullptr);
  EXPECT_LE(lie_check(d->integral, LVSystem::exact(s)), 1e-10);
}

TEST(Catalog3d, GenericSystemHasNoIntegral) {
  ExactSystem s = make_system({"1", "2", "-1"}, {{"3", "-1", "2"}, {"5", "1", "-3"}, {"1", "4", "2"}},
                              {"7", "-2", "3"});
  EXPECT_TRUE(detect(s).detections.empty());
}

TEST(Catalog3d, SampledInstancesAreSound) {
  for (const Rule& rule : catalog3d()) {
    std::mt19937_64 rng(2000);
    for (int k = 0; k < 5; ++k) {
      auto s = sample_on_manifold(rule, rng);
      ASSERT_TRUE(s.has_value()) << rule.id;
      RuleOutcome o = apply_rule(rule, *s);
      ASSERT_FALSE(o.detections.empty()) << rule.id;
      for (const Detection& d : o.detections) {
        EXPECT_TRUE(is_integrating_factor(*s, d.factor)) << rule.id;
        EXPECT_LE(lie_check(d.integral, LVSystem::exact(*s)), 1e-10) << rule.id;
      }
    }
  }
}

}  // namespace
}  // namespace lvfi
