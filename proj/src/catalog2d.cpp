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

#include "lvfi/catalog2d.hpp"

#include "lvfi/closed_form.hpp"

namespace lvfi {
namespace {

Rule base(std::string id, std::string description, std::vector<int> e_pattern) {
  Rule r;
  r.id = std::move(id);
  r.description = std::move(description);
  r.dim = 2;
  r.ansatz = Ansatz::kPlanar;
  r.e_pattern = std::move(e_pattern);
  return r;
}

const std::vector<std::pair<std::string, std::string>> kZeroTermExponents = {
    {"l1", "a22*(a21-a11)/(a11*a22-a12*a21)"},
    {"l2", "a11*(a12-a22)/(a11*a22-a12*a21)"},
};
const char* kZeroTermSolvability = "b1*a22*(a21-a11)+b2*a11*(a12-a22)";

// R = x2^(-lam-1) / (b2 + a21 x1 + a22 x2), lam the ratio of the rate rows.
std::optional<FactorChoice> rank_one_factor(const ExactSystem& s, const std::array<Rational, 3>&) {
  const Rational row1[3] = {s.b(0), s.A(0, 0), s.A(0, 1)};
  const Rational row2[3] = {s.b(1), s.A(1, 0), s.A(1, 1)};
  for (int k = 0; k < 3; ++k) {
    if (row2[k].is_zero()) continue;
    Rational lam = row1[k] / row2[k];
    FactorChoice out;
    out.factor.ansatz = Ansatz::kPlanar;
    out.factor.l = {Rational(1), -lam};
    out.factor.polys.emplace_back(rate_polynomial(s, 1), Rational(-1));
    out.values["lam"] = lam;
    return out;
  }
  return std::nullopt;
}

std::optional<FactorChoice> exponential_factor(const ExactSystem& s,
                                               const std::array<Rational, 3>&) {
  const Rational& b2 = s.b(1);
  if (b2.is_zero()) return std::nullopt;
  FactorChoice out;
  out.factor.ansatz = Ansatz::kPlanar;
  out.factor.l = {Rational(1), Rational(1)};
  out.factor.c = {s.A(1, 0) / b2, -s.A(0, 1) / b2};
  return out;
}

std::optional<FactorChoice> inverse_first_component(const ExactSystem& s,
                                                    const std::array<Rational, 3>&) {
  LaurentPoly f1 = field_polynomials(s)[0];
  if (f1.is_zero()) return std::nullopt;
  FactorChoice out;
  out.factor.ansatz = Ansatz::kPlanar;
  out.factor.l = {Rational(1), Rational(1)};
  out.factor.polys.emplace_back(f1, Rational(-1));
  return out;
}

std::vector<Rule> build() {
  std::vector<Rule> rules;

  {
    Rule r = base("R2D-A", "both constant terms nonzero; polynomial integral", {1, 1});
    r.conditions = {"b1+b2", "2*a11+a21", "a12+2*a22"};
    r.fixed_l = {Rational(1), Rational(1)};
    r.printed_h = "b1*x1*x2+a11*x1^2*x2-a22*x1*x2^2+e1*x2-e2*x1";
    r.sampler_deps = {"b2", "a21", "a12"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R2D-B", "one constant term; power-type integral", {1, 0});
    r.conditions = {"2*a11*a22-a21*a22-a21*a12", "2*b2*a11-b1*a21"};
    r.guards = {"a21"};
    r.fixed_l = {Rational(1)};
    r.require_unique_l = true;
    r.post_guards = {"l2"};
    r.printed_l = {{"l2", "-2*a11/a21"}};
    r.printed_h = "x2^l2*(-b2*x1-a21/2*x1^2-a22*x1*x2+e1/l2)";
    r.sampler_deps = {"a12", "b1"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R2D-B/l2=0", "one constant term; logarithmic integral", {1, 0});
    r.conditions = {"2*a11*a22-a21*a22-a21*a12", "2*b2*a11-b1*a21"};
    r.guards = {"a21"};
    r.fixed_l = {Rational(1)};
    r.require_unique_l = true;
    r.post_conditions = {"l2"};
    r.printed_l = {{"l2", "-2*a11/a21"}};
    r.printed_h = "-b2*x1-a21/2*x1^2-a22*x1*x2+e1*ln(x2)";
    r.sampler_conditions = {"a11"};
    r.sampler_deps = {"a11", "a12", "b1"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R2D-B/trivial", "second component vanishes identically", {1, 0});
    r.conditions = {"a21", "a22", "b2"};
    r.factor_hook = inverse_first_component;
    r.printed_h = "x2";
    r.sampler_deps = {"a21", "a22", "b2"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R2D-C", "no constant terms; full-rank exponent system", {0, 0});
    r.require_unique_l = true;
    r.post_guards = {"l1", "l2"};
    r.informational = {kZeroTermSolvability};
    r.printed_l = kZeroTermExponents;
    r.printed_h = "x1^l1*x2^l2*(b1/l2+a11/l2*x1-a22/l1*x2)";
    r.sampler_conditions = {kZeroTermSolvability};
    r.sampler_deps = {"b2"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R2D-C/l1=0", "no constant terms; first exponent zero", {0, 0});
    r.require_unique_l = true;
    r.post_conditions = {"l1"};
    r.post_guards = {"l2", "l2+1"};
    r.printed_l = kZeroTermExponents;
    r.printed_h = "x2^l2*(b1/l2+a11/l2*x1+a12/(l2+1)*x2)";
    r.sampler_conditions = {"a22", kZeroTermSolvability};
    r.sampler_deps = {"a22", "b2"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R2D-C/l1=0,l2=-1", "no constant terms; exponents 0 and -1", {0, 0});
    r.require_unique_l = true;
    r.post_conditions = {"l1", "l2+1"};
    r.printed_l = kZeroTermExponents;
    r.printed_h = "a12*ln(x2)-a22*ln(x1)-b1/x2-a11*x1/x2";
    r.sampler_conditions = {"a21-a11", kZeroTermSolvability};
    r.sampler_deps = {"a21", "b2"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R2D-C/l1=l2=0", "no constant terms; both exponents zero", {0, 0});
    r.require_unique_l = true;
    r.post_conditions = {"l1", "l2"};
    r.printed_l = kZeroTermExponents;
    r.printed_h = "b1*ln(x2)+a12*x2-b2*ln(x1)-a21*x1";
    r.sampler_conditions = {"a11", "a22"};
    r.sampler_deps = {"a11", "a22"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R2D-D", "no constant terms; proportional rate rows", {0, 0});
    r.conditions = {"a11*a22-a12*a21", "a11*b2-b1*a21", "a12*b2-b1*a22"};
    r.guards = {"b1^2+a11^2+a12^2", "b2^2+a21^2+a22^2"};
    r.factor_hook = rank_one_factor;
    r.printed_h = "x1*x2^(-lam)";
    r.sampler_deps = {"a12", "b1"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R2D-E", "exponential integrating factor; logarithmic integral", {-1, -1});
    r.conditions = {"a11", "a22", "e2*a12-e1*a21", "b1+b2"};
    r.guards = {"a12*a21", "b2"};
    r.factor_hook = exponential_factor;
    r.printed_h = "a21*x1-a12*x2+b2*ln(e1+a12*x1*x2)";
    r.sampler_deps = {"a11", "a22", "e2", "b1"};
    rules.push_back(std::move(r));
  }

  for (Rule& r : rules) compile(r);
  return rules;
}

}  // namespace

const std::vector<Rule>& catalog2d() {
  static const std::vector<Rule> rules = build();
  return rules;
}

}  // namespace lvfi
