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

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lvfi/expr.hpp"
#include "lvfi/formula.hpp"
#include "lvfi/model.hpp"
#include "lvfi/oracle.hpp"

namespace lvfi {

using Values = std::map<std::string, Rational>;

// Printed exponent formula versus the exactly solved exponent.
struct ExponentCheck {
  std::string name;
  std::string formula;
  std::optional<Rational> printed;  // nullopt when the formula is undefined
  Rational solved;
  bool agrees = false;
};

struct Detection {
  std::string rule_id;
  std::string description;
  Permutation perm = Permutation::identity(2);  // rule applied to permute_system(s, perm)
  IntegratingFactor factor;                     // in the permuted frame
  Values values;                                // alpha, beta, gamma, l1.., extras
  Expr integral;                                // in the input coordinates
  std::string source;                           // "template" or "derived"
  bool template_deviation = false;
  std::vector<ExponentCheck> exponent_checks;
  std::vector<std::string> notes;
};

// A rule whose conditions held but which produced no verified integral.
struct Diagnostic {
  std::string rule_id;
  Permutation perm = Permutation::identity(2);
  std::string reason;
};

struct AbgCandidate {
  std::array<Rational, 3> abg{};
  Values values;
};
struct FactorChoice {
  IntegratingFactor factor;
  Values values;
};
using AbgHook = std::function<std::vector<AbgCandidate>(const ExactSystem&)>;
using FactorHook =
    std::function<std::optional<FactorChoice>(const ExactSystem&, const std::array<Rational, 3>&)>;
using SystemSampler = std::function<std::optional<ExactSystem>(std::mt19937_64&)>;

struct CompiledRule;

struct Rule {
  std::string id;
  std::string description;
  int dim = 2;
  Ansatz ansatz = Ansatz::kPlanar;
  std::vector<int> e_pattern;  // 1 nonzero, 0 zero, -1 either

  std::vector<std::string> conditions;     // must vanish
  std::vector<std::string> guards;         // must not vanish
  std::vector<std::string> informational;  // reported, not enforced

  // (alpha, beta, gamma): nullspace of linear constraints, a fixed value, or a hook.
  std::vector<std::string> abg_constraints;
  std::optional<std::array<Rational, 3>> fixed_abg;
  AbgHook abg_hook;
  // Replaces the monomial factor with solved exponents.
  FactorHook factor_hook;

  std::vector<std::optional<Rational>> fixed_l;
  bool require_unique_l = false;
  std::vector<std::string> post_conditions;  // may mention alpha, beta, gamma, l_i
  std::vector<std::string> post_guards;

  std::vector<std::pair<std::string, std::string>> printed_l;
  std::string printed_h;

  std::vector<std::string> sampler_conditions;
  std::vector<std::string> sampler_deps;
  SystemSampler custom_sampler;

  std::shared_ptr<const CompiledRule> compiled;
};

// Parses every formula of the rule once. Throws FormulaError.
void compile(Rule& rule);

struct RuleOutcome {
  std::vector<Detection> detections;
  std::vector<Diagnostic> diagnostics;
};

// Applies one rule to a system in the rule's own coordinate frame. The
// detections carry the identity permutation.
RuleOutcome apply_rule(const Rule& rule, const ExactSystem& s);

// Conditions and guards, evaluated on s alone.
bool conditions_hold(const Rule& rule, const ExactSystem& s);

// Basis of (alpha, beta, gamma) satisfying the rule's linear constraints.
std::vector<std::array<Rational, 3>> solve_abg(const Rule& rule, const ExactSystem& s);

// Exact value of a formula over system parameters and `extra` names;
// nullopt when it divides by zero or does not reduce to a constant.
std::optional<Rational> evaluate_formula(const std::string& text, const ExactSystem& s,
                                         const Values& extra = {});

// Random small nonzero rational p/q with |p| <= 4 and q <= 3.
Rational random_rational(std::mt19937_64& rng);

// Draws an exact system on the rule's condition manifold for which the rule
// fires under the identity frame.
std::optional<ExactSystem> sample_on_manifold(const Rule& rule, std::mt19937_64& rng,
                                              int max_attempts = 400);

}  // namespace lvfi
