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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lvfi/closed_form.hpp"
#include "lvfi/expr.hpp"
#include "lvfi/formula.hpp"
#include "test_util.hpp"

namespace lvfi {
namespace {

using testing::c;
using testing::x;

Expr parse2(const std::string& text) { return parse_formula(text, coordinate_resolver(2)); }
Expr parse3(const std::string& text) { return parse_formula(text, coordinate_resolver(3)); }

double central_difference(const Expr& h, std::vector<double> p, int i, double step) {
  std::vector<double> lo = p, hi = p;
  lo[i] -= step;
  hi[i] += step;
  return (eval(h, hi) - eval(h, lo)) / (2 * step);
}

TEST(Eval, Polynomial) { EXPECT_DOUBLE_EQ(eval(x(0) * x(1), std::vector<double>{2, 3}), 6.0); }

TEST(Eval, VolterraIntegralAtOnes) {
  Expr h = parse2("ln|x2| - x2 + ln|x1| - x1");
  EXPECT_DOUBLE_EQ(eval(h, std::vector<double>{1, 1}), -2.0);
}

TEST(Eval, DomainErrorNamesSubexpression) {
  Expr h = Expr::pow(x(0), Scalar(testing::q("1/2")));
  try {
    eval(h, std::vector<double>{-1, 1});
    FAIL() << "expected a domain error";
  } catch (const DomainError& ex) {
    EXPECT_EQ(ex.subexpression(), "x1^(1/2)");
  }
  EXPECT_THROW(eval(parse2("ln|x2|"), std::vector<double>{1, 0}), DomainError);
  EXPECT_THROW(eval(parse2("x1^(-1)"), std::vector<double>{0, 1}), DomainError);
  EXPECT_DOUBLE_EQ(eval(parse2("x1^3"), std::vector<double>{-2, 1}), -8.0);
}

TEST(Diff, ConstantIsZero) {
  EXPECT_TRUE(diff(c(7), 0).is_zero());
  EXPECT_TRUE(diff(x(1), 0).is_zero());
}

TEST(Diff, PowerRule) {
  Expr d = diff(parse2("x1^2*x2"), 0);
  EXPECT_EQ(to_string(d), "2*x1*x2");
  Expr g = diff(parse2("x2^(-3/2)"), 1);
  EXPECT_EQ(to_string(g), "-3/2*x2^(-5/2)");
}

TEST(Diff, LogarithmUsesQuotient) {
  Expr d = diff(parse2("ln|x1*x2 + 3|"), 0);
  for (double a : {0.5, 1.0, -4.0}) {
    EXPECT_NEAR(eval(d, std::vector<double>{a, 2.0}), 2.0 / (2 * a + 3), 1e-14);
  }
}

TEST(Diff, MatchesCentralDifferences) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int k = 0; k < 40; ++k) {
    Expr h = testing::random_expr(3, 3, rng);
    for (int p = 0; p < 20; ++p) {
      std::vector<double> pt{u(rng), u(rng), u(rng)};
      for (int i = 0; i < 3; ++i) {
        double exact = eval(diff(h, i), pt);
        double fd = central_difference(h, pt, i, 1e-5);
        EXPECT_LE(std::fabs(exact - fd), 1e-6 * (1 + std::fabs(exact))) << to_string(h);
      }
    }
  }
}

TEST(Lie, ConstantHasZeroDerivative) {
  LVSystem s = LVSystem::exact(testing::volterra());
  EXPECT_TRUE(simplify(lie_derivative(c(3), s)).is_zero());
}

TEST(Lie, VolterraIntegralVanishesOnSamples) {
  LVSystem s = LVSystem::exact(testing::volterra());
  Expr l = lie_derivative(parse2("ln|x2| - x2 + ln|x1| - x1"), s);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 10);
  for (int k = 0; k < 50; ++k) {
    EXPECT_NEAR(eval(l, std::vector<double>{u(rng), u(rng)}), 0.0, 1e-12);
  }
}

TEST(Lie, PureGrowthCoordinate) {
  // x1' = x1 when b1 = 1 and the first row of A and e1 vanish.
  LVSystem s = LVSystem::exact(testing::make_system({"1", "2"}, {{"0", "0"}, {"3", "-1"}}, {"0", "5"}));
  Expr l = simplify(lie_derivative(x(0), s));
  EXPECT_EQ(to_string(l), "x1");
}

TEST(Lie, IsLinear) {
  std::mt19937_64 rng(6);
  LVSystem s = LVSystem::exact(testing::random_system(3, rng));
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int k = 0; k < 20; ++k) {
    Expr h1 = testing::random_expr(3, 2, rng);
    Expr h2 = testing::random_expr(3, 2, rng);
    Expr combo = c(2) * h1 + c("-1/3") * h2;
    Expr lhs = lie_derivative(combo, s);
    Expr rhs = c(2) * lie_derivative(h1, s) + c("-1/3") * lie_derivative(h2, s);
    for (int p = 0; p < 10; ++p) {
      std::vector<double> pt{u(rng), u(rng), u(rng)};
      double a = eval(lhs, pt), b = eval(rhs, pt);
      EXPECT_LE(std::fabs(a - b), 1e-12 * (1 + std::fabs(a)));
    }
  }
}

TEST(Simplify, DropsZeroAndUnit) {
  EXPECT_EQ(simplify(Expr::add({c(0), x(0)})), x(0));
  EXPECT_EQ(simplify(Expr::mul({c(1), Expr::pow(x(1), Scalar(0))})), c(1));
  EXPECT_EQ(simplify(Expr::mul({c(0), Expr::ln_abs(x(0))})), c(0));
}

TEST(Simplify, PreservesValueAndIsIdempotent) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int k = 0; k < 100; ++k) {
    Expr h = testing::random_expr(2, 4, rng);
    Expr s = simplify(h);
    EXPECT_EQ(simplify(s), s);
    for (int p = 0; p < 100; ++p) {
      std::vector<double> pt{u(rng), u(rng)};
      double a = eval(h, pt), b = eval(s, pt);
      EXPECT_LE(std::fabs(a - b), 1e-12 * (1 + std::fabs(a))) << to_string(h);
    }
  }
}

TEST(Print, RationalExponentsStayExact) {
  EXPECT_EQ(to_string(simplify(parse2("x2^(-3/2)*x1"))), "x2^(-3/2)*x1");
  EXPECT_EQ(to_string(simplify(parse2("1/2*x1 - x2"))), "(1/2)*x1 - x2");
}

TEST(Relabel, SwapsVariables) {
  Expr h = parse3("x1^2*x3 + ln|x2|");
  Expr r = relabel(h, {2, 0, 1});
  std::vector<double> pt{2.0, 3.0, 5.0};
  EXPECT_DOUBLE_EQ(eval(r, pt), eval(h, std::vector<double>{5.0, 2.0, 3.0}));
  EXPECT_EQ(max_var_index(h), 2);
}

TEST(Formula, ParsesParameterNamesAndMacros) {
  ParamSpace space(3);
  std::vector<Rational> v(static_cast<std::size_t>(space.size()), Rational(0));
  v[static_cast<std::size_t>(space.b(0))] = 2;
  v[static_cast<std::size_t>(space.b(2))] = 5;
  v[static_cast<std::size_t>(space.alpha())] = 3;
  v[static_cast<std::size_t>(space.gamma())] = 7;
  Expr b1 = simplify(parse_formula("B1", numeric_resolver(space, v)));
  ASSERT_TRUE(b1.is_constant());
  EXPECT_EQ(b1.value(), Scalar(Rational(2 * 3 - 5 * 7)));
  EXPECT_THROW(parse_formula("x4", coordinate_resolver(3)), FormulaError);
  EXPECT_THROW(parse_formula("x1 +", coordinate_resolver(2)), FormulaError);
  EXPECT_EQ(*space.index("a23"), space.a(1, 2));
  EXPECT_EQ(*space.index("l3"), space.l(2));
}

TEST(ClosedForm, ExactLieCheck) {
  ExactSystem s = testing::volterra();
  auto good = to_closed_form(parse2("ln|x2| - x2 + ln|x1| - x1"), 2);
  auto bad = to_closed_form(parse2("ln|x2| - x2 + ln|x1| + x1"), 2);
  ASSERT_TRUE(good && bad);
  EXPECT_TRUE(lie_vanishes_exactly(*good, s));
  EXPECT_FALSE(lie_vanishes_exactly(*bad, s));
  EXPECT_FALSE(to_closed_form(parse2("exp(x1)"), 2));
}

TEST(ClosedForm, IntegratesAGradient) {
  Expr h = parse2("x1^(3/2)*x2 - 4*ln|x2| + x1");
  auto cf = to_closed_form(h, 2);
  ASSERT_TRUE(cf);
  auto grad = polynomial_gradient(*cf);
  ASSERT_TRUE(grad);
  auto back = integrate_gradient(*grad);
  ASSERT_TRUE(back);
  std::vector<double> p{1.7, 0.3}, o{1.0, 1.0};
  EXPECT_NEAR(eval(to_expr(*back), p) - eval(to_expr(*back), o), eval(h, p) - eval(h, o), 1e-12);
}

}  // namespace
}  // namespace lvfi
