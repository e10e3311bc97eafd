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

#include "lvfi/detect.hpp"
#include "lvfi/report.hpp"
#include "test_util.hpp"

namespace lvfi {
namespace {

TEST(ExprJson, RoundTripKeepsRationalsExact) {
  Expr h = testing::parse_h("1/3*x1^(-3/2)*x2 + ln|x1 + 2| - exp(x2/5)", 2);
  Json j = expr_to_json(h);
  EXPECT_EQ(expr_from_json(j), h);
  EXPECT_EQ(expr_from_json(Json::parse(j.dump())), h);
}

TEST(ExprJson, RandomRoundTrips) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    Expr h = testing::random_expr(3, 4, rng);
    EXPECT_EQ(expr_from_json(Json::parse(expr_to_json(h).dump())), h) << to_string(h);
  }
}

TEST(ExprJson, FloatConstantsAreNumbers) {
  Expr h = Expr::mul({Expr::constant(Scalar(0.25)), Expr::var(0)});
  Json j = expr_to_json(h);
  EXPECT_EQ(expr_from_json(j), h);
}

TEST(ExprJson, RejectsMalformed) {
  EXPECT_THROW(expr_from_json(Json::parse(R"({"op":"frobnicate"})")), InputError);
  EXPECT_THROW(expr_from_json(Json::parse(R"({"op":"var","index":-1})")), InputError);
  EXPECT_THROW(expr_from_json(Json::parse(R"({"op":"const","value":"1/0"})")), InputError);
  EXPECT_THROW(expr_from_json(Json::parse(R"({"op":"add","args":[]})")), InputError);
  EXPECT_THROW(expr_from_json(Json::parse(R"({"op":"ln_abs","args":[]})")), InputError);
}

TEST(DetectionJson, CarriesIntegralAndFactor) {
  DetectionResult r = detect(testing::volterra());
  ASSERT_FALSE(r.detections.empty());
  Json j = detection_to_json(r.detections.front());
  EXPECT_EQ(j["rule"], r.detections.front().rule_id);
  EXPECT_EQ(j["integral"], to_string(r.detections.front().integral));
  EXPECT_EQ(expr_from_json(j["integral_ast"]), r.detections.front().integral);
  EXPECT_TRUE(j["integrating_factor"].contains("l"));
  EXPECT_TRUE(j.contains("exponent_checks") || r.detections.front().exponent_checks.empty());
}

TEST(ConditionJson, ListsResidualsAndGuards) {
  Json j = condition_report_to_json(rule_conditions("R2D-A"));
  EXPECT_EQ(j["id"], "R2D-A");
  EXPECT_EQ(j["residuals"].size(), 3u);
  EXPECT_EQ(j["guards"].size(), 2u);
}

TEST(ResidualJson, OneListPerComponent) {
  LaurentPoly p(2);
  p.add_term({-1, 0}, Rational(3) / Rational(4));
  Json j = residual_to_json({p, LaurentPoly(2)});
  ASSERT_EQ(j.size(), 2u);
  ASSERT_EQ(j[0].size(), 1u);
  EXPECT_EQ(j[0][0]["coefficient"], "3/4");
  EXPECT_EQ(j[0][0]["exponents"], Json::parse("[-1, 0]"));
  EXPECT_TRUE(j[1].empty());
}

}  // namespace
}  // namespace lvfi
