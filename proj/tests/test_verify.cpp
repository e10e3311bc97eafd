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

#include <cmath>

#include "lvfi/verify.hpp"
#include "test_util.hpp"

namespace lvfi {
namespace {

using testing::make_system;
using testing::parse_h;

LVSystem growth() {
  return LVSystem::exact(make_system({"1", "0"}, {{"0", "0"}, {"0", "0"}}, {"0", "0"}));
}

const char* kVolterraH = "ln|x1| + ln|x2| - x1 - x2";

TEST(Integrate, ExponentialGrowthRk4) {
  Trajectory tr = integrate(growth(), Eigen::Vector2d(1, 1), 1.0, 1e-3);
  EXPECT_EQ(tr.method, Method::kRk4);
  EXPECT_EQ(tr.step_count, 1000);
  EXPECT_NEAR(tr.times.back(), 1.0, 1e-12);
  EXPECT_NEAR(tr.states(tr.states.rows() - 1, 0), std::exp(1.0), 1e-10);
  EXPECT_EQ(tr.states(tr.states.rows() - 1, 1), 1.0);
}

TEST(Integrate, ExponentialGrowthRk45) {
  Trajectory tr = integrate(growth(), Eigen::Vector2d(1, 1), 1.0, 1e-2, Method::kRk45);
  EXPECT_EQ(tr.method, Method::kRk45);
  EXPECT_NEAR(tr.times.back(), 1.0, 1e-12);
  EXPECT_NEAR(tr.states(tr.states.rows() - 1, 0), std::exp(1.0), 1e-8);
}

TEST(Integrate, FourthOrderConvergence) {
  auto error = [](double h) {
    Trajectory tr = integrate(growth(), Eigen::Vector2d(1, 1), 2.0, h);
    return std::fabs(tr.states(tr.states.rows() - 1, 0) - std::exp(2.0));
  };
  EXPECT_GE(error(0.02) / error(0.01), 8.0);
}

TEST(Integrate, BlowUpStopsEarly) {
  // x1' = x1^2 reaches infinity at t = 1.
  LVSystem s = LVSystem::exact(make_system({"0", "0"}, {{"1", "0"}, {"0", "0"}}, {"0", "0"}));
  Trajectory tr = integrate(s, Eigen::Vector2d(1, 1), 2.0, 1e-3);
  EXPECT_TRUE(tr.blew_up);
  EXPECT_LT(tr.times.back(), 1.01);
}

TEST(Conservation, VolterraIntegralIsConserved) {
  LVSystem s = LVSystem::exact(testing::volterra());
  Trajectory tr = integrate(s, Eigen::Vector2d(0.5, 1), 10.0, 1e-3);
  ConservationReport r = conservation_report(parse_h(kVolterraH, 2), tr);
  EXPECT_FALSE(r.blew_up);
  EXPECT_LE(r.max_abs_drift, 1e-6);
  EXPECT_EQ(r.sample_count, static_cast<int>(tr.times.size()));
}

TEST(Conservation, NonIntegralDrifts) {
  LVSystem s = LVSystem::exact(testing::volterra());
  Trajectory tr = integrate(s, Eigen::Vector2d(0.5, 1), 10.0, 1e-3);
  EXPECT_GT(conservation_report(parse_h("x1", 2), tr).max_abs_drift, 1e-3);
}

TEST(Conservation, RestingStateHasNoDrift) {
  LVSystem s = LVSystem::exact(make_system({"0", "0"}, {{"0", "0"}, {"0", "0"}}, {"0", "0"}));
  Trajectory tr = integrate(s, Eigen::Vector2d(0.3, 2), 5.0, 1e-2);
  ConservationReport r = conservation_report(parse_h("x1^2 + ln|x2|", 2), tr);
  EXPECT_EQ(r.max_abs_drift, 0.0);
}

TEST(Conservation, SearchFindsUsableStart) {
  LVSystem s = LVSystem::exact(testing::volterra());
  auto run = conservation_search(parse_h(kVolterraH, 2), s, 10.0, 1e-3, Method::kRk4, {}, 42);
  ASSERT_TRUE(run.has_value());
  EXPECT_FALSE(run->truncated);
  EXPECT_DOUBLE_EQ(run->horizon, 10.0);
  EXPECT_LE(run->report.max_rel_drift, 1e-6);
}

TEST(Conservation, SearchSkipsRestingStart) {
  // (1, 1) is the Volterra equilibrium; a non-integral must still drift.
  LVSystem s = LVSystem::exact(testing::volterra());
  auto run = conservation_search(parse_h("x1", 2), s, 10.0, 1e-3, Method::kRk4, {}, 42);
  ASSERT_TRUE(run.has_value());
  EXPECT_NE(run->x0, Eigen::VectorXd::Ones(2));
  EXPECT_GT(run->report.max_rel_drift, 1e-3);
}

TEST(LieCheck, SeparatesIntegralFromNonIntegral) {
  LVSystem s = LVSystem::exact(testing::volterra());
  EXPECT_LE(lie_check(parse_h(kVolterraH, 2), s), 1e-12);
  EXPECT_GT(lie_check(parse_h("x1 + x2", 2), s), 1e-3);
}

TEST(LieCheck, SeedIsReproducible) {
  LVSystem s = LVSystem::exact(testing::volterra());
  Expr h = parse_h("x1*x2", 2);
  EXPECT_EQ(lie_check(h, s, 50, {}, 9), lie_check(h, s, 50, {}, 9));
}

}  // namespace
}  // namespace lvfi
