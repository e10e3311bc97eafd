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

#include <algorithm>
#include <random>
#include <set>

#include "lvfi/catalog2d.hpp"
#include "lvfi/detect.hpp"
#include "lvfi/oracle.hpp"
#include "lvfi/verify.hpp"
#include "test_util.hpp"

namespace lvfi {
namespace {

using testing::make_system;

const Detection* find(const DetectionResult& r, const std::string& id) {
  for (const Detection& d : r.detections)
    if (d.rule_id == id) return &d;
  return nullptr;
}

std::string canonical(const std::string& text, int dim) {
  return to_string(canonical_integral(testing::parse_h(text, dim), dim));
}

TEST(Catalog2d, NonzeroConstantTermsPolynomialIntegral) {
  ExactSystem s = make_system({"1", "-1"}, {{"1", "-2"}, {"-2", "1"}}, {"5", "7"});
  DetectionResult r = detect(s);
  const Detection* d = find(r, "R2D-A");
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(to_string(d->integral), canonical("x1*x2 + x1^2*x2 - x1*x2^2 + 5*x2 - 7*x1", 2));
  EXPECT_LE(lie_check(d->integral, LVSystem::exact(s)), 1e-10);
}

TEST(Catalog2d, ClassicVolterra) {
  ExactSystem s = testing::volterra();
  DetectionResult r = detect(s);
  const Detection* d = find(r, "R2D-C/l1=l2=0");
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(to_string(d->integral), canonical("ln|x1| + ln|x2| - x1 - x2", 2));
  for (const Detection& e : r.detections)
    EXPECT_LE(lie_check(e.integral, LVSystem::exact(s)), 1e-10) << e.rule_id;
}

TEST(Catalog2d, ExponentialFactor) {
  ExactSystem s = make_system({"2", "-2"}, {{"0", "3"}, {"2", "0"}}, {"3", "2"});
  DetectionResult r = detect(s);
  const Detection* d = find(r, "R2D-E");
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(to_string(d->integral), canonical("2*x1 - 3*x2 - 2*ln|3 + 3*x1*x2|", 2));
  // The swapped frame gives an equivalent integral, reported once.
  EXPECT_EQ(std::count_if(r.detections.begin(), r.detections.end(),
                          [](const Detection& x) { return x.rule_id == "R2D-E"; }),
            1);
}

TEST(Catalog2d, ExponentialFactorNeedsNonzeroLinearRate) {
  // b2 = 0 degenerates the logarithmic form.
  ExactSystem s = make_system({"0", "0"}, {{"0", "3"}, {"2", "0"}}, {"3", "2"});
  EXPECT_EQ(find(detect(s), "R2D-E"), nullptr);
}

TEST(Catalog2d, RuleConditions) {
  ConditionReport c = rule_conditions("R2D-A");
  EXPECT_EQ(c.residuals, (std::vector<std::string>{"b1+b2", "2*a11+a21", "a12+2*a22"}));
  EXPECT_EQ(c.guards, (std::vector<std::string>{"e1 != 0", "e2 != 0"}));
  EXPECT_THROW(rule_conditions("R2D-Q"), InputError);
}

TEST(Catalog2d, IdsUniqueAndPlanar) {
  std::set<std::string> ids;
  for (const Rule& r : catalog2d()) {
    EXPECT_TRUE(ids.insert(r.id).second) << r.id;
    EXPECT_EQ(r.dim, 2);
    EXPECT_EQ(r.ansatz, Ansatz::kPlanar);
  }
  EXPECT_GE(ids.size(), 10u);
}

TEST(Catalog2d, GenericSystemHasNoIntegral) {
  ExactSystem s = make_system({"1", "2"}, {{"3", "-1"}, {"5", "1"}}, {"7", "-2"});
  EXPECT_TRUE(detect(s).detections.empty());
}

TEST(Catalog2d, SampledInstancesAreSound) {
  for (const Rule& rule : catalog2d()) {
    std::mt19937_64 rng(1000);
    for (int k = 0; k < 20; ++k) {
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
