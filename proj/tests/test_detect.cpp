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

#include "lvfi/detect.hpp"
#include "lvfi/verify.hpp"
#include "test_util.hpp"

namespace lvfi {
namespace {

std::multiset<std::string> ids(const DetectionResult& r) {
  std::multiset<std::string> out;
  for (const Detection& d : r.detections) out.insert(d.rule_id);
  return out;
}

// detect(permute(s)) mapped back must give the same rules and valid integrals.
void expect_equivariant(const ExactSystem& s) {
  DetectionResult base = detect(s);
  LVSystem ls = LVSystem::exact(s);
  for (const Permutation& p : Permutation::all(s.dim())) {
    DetectionResult moved = detect(permute_system(s, p));
    EXPECT_EQ(ids(moved), ids(base)) << p.to_string();
    for (const Detection& d : moved.detections) {
      Expr back = relabel(d.integral, p.images());
      EXPECT_LE(lie_check(back, ls), 1e-10) << d.rule_id << " " << p.to_string();
    }
  }
}

TEST(Detect, EquivariantOnSampledSystems) {
  std::mt19937_64 rng(17);
  for (int dim : {2, 3}) {
    for (const Rule& rule : catalog(dim)) {
      auto s = sample_on_manifold(rule, rng);
      ASSERT_TRUE(s.has_value()) << rule.id;
      expect_equivariant(*s);
    }
  }
}

TEST(Detect, RandomSystemsAreNegative) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 40; ++k) {
    ExactSystem s = testing::random_system(k % 2 ? 3 : 2, rng, true);
    EXPECT_TRUE(detect(s).detections.empty()) << serialize_system(LVSystem::exact(s));
  }
}

TEST(Detect, IntegralsInInputCoordinates) {
  // a13 = a23 = 0 only after swapping coordinates 1 and 3.
  ExactSystem s = testing::make_system({"2", "-1", "1"}, {{"2", "-1", "3"}, {"0", "1", "-2"}, {"0", "-2", "1"}},
                                       {"0", "7", "5"});
  DetectionResult r = detect(s);
  ASSERT_FALSE(r.detections.empty());
  for (const Detection& d : r.detections)
    EXPECT_LE(lie_check(d.integral, LVSystem::exact(s)), 1e-10) << d.rule_id;
}

TEST(Detect, FloatInputUsesExactValue) {
  LVSystem s = parse_system(R"({"dim":2,"b":[1.0,-1.0],"A":[[0.0,-1.0],[1.0,0.0]],"e":[0.0,0.0]})");
  EXPECT_EQ(s.kind(), ScalarKind::kFloat);
  EXPECT_FALSE(detect(s).detections.empty());
}

TEST(Detect, RejectsUnsupportedDimension) {
  EXPECT_THROW(catalog(4), InputError);
  EXPECT_THROW(find_rule("nope"), InputError);
  EXPECT_EQ(rule_ids().size(), catalog(2).size() + catalog(3).size());
}

}  // namespace
}  // namespace lvfi
