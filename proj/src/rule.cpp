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

#include "lvfi/rule.hpp"

#include <stdexcept>

#include "lvfi/closed_form.hpp"
#include "lvfi/linalg.hpp"

namespace lvfi {

struct CompiledRule {
  explicit CompiledRule(int dim) : space(dim) {}
  ParamSpace space;
  std::vector<LaurentPoly> conditions, guards, informational, abg_constraints,
      post_conditions, post_guards, sampler_conditions;
};

namespace {

std::vector<LaurentPoly> compile_all(const std::vector<std::string>& texts,
                                     const ParamSpace& space) {
  std::vector<LaurentPoly> out;
  for (const std::string& t : texts) out.push_back(parse_laurent(t, space));
  return out;
}

const CompiledRule& compiled_of(const Rule& rule) {
  if (!rule.compiled) throw std::logic_error("rule " + rule.id + " is not compiled");
  return *rule.compiled;
}

std::optional<Rational> eval(const LaurentPoly& p, const ParamSpace& space,
                             const std::vector<Rational>& vals) {
  std::vector<Rational> point(static_cast<std::size_t>(space.dim()), Rational(0));
  point.insert(point.end(), vals.begin(), vals.end());
  try {
    return p.evaluate(point);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

bool all_vanish(const std::vector<LaurentPoly>& ps, const ParamSpace& space,
                const std::vector<Rational>& vals) {
  for (const LaurentPoly& p : ps) {
    auto v = eval(p, space, vals);
    if (!v || !v->is_zero()) return false;
  }
  return true;
}

bool none_vanish(const std::vector<LaurentPoly>& ps, const ParamSpace& space,
                 const std::vector<Rational>& vals) {
  for (const LaurentPoly& p : ps) {
    auto v = eval(p, space, vals);
    if (!v || v->is_zero()) return false;
  }
  return true;
}

void assign(std::vector<Rational>& vals, const ParamSpace& space, const Values& named) {
  for (const auto& [name, v] : named) {
    if (auto k = space.index(name)) vals[*k] = v;
  }
}

bool e_pattern_matches(const Rule& rule, const ExactSystem& s) {
  for (int i = 0; i < s.dim() && i < static_cast<int>(rule.e_pattern.size()); ++i) {
    int want = rule.e_pattern[i];
    if (want == 1 && s.e(i).is_zero()) return false;
    if (want == 0 && !s.e(i).is_zero()) return false;
  }
  return true;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

const char* kAbgNames[3] = {"alpha", "beta", "gamma"};

}  // namespace

void compile(Rule& rule) {
  auto c = std::make_shared<CompiledRule>(rule.dim);
  c->conditions = compile_all(rule.conditions, c->space);
  c->guards = compile_all(rule.guards, c->space);
  c->informational = compile_all(rule.informational, c->space);
  c->abg_constraints = compile_all(rule.abg_constraints, c->space);
  c->post_conditions = compile_all(rule.post_conditions, c->space);
  c->post_guards = compile_all(rule.post_guards, c->space);
  c->sampler_conditions = compile_all(rule.sampler_conditions, c->space);
  rule.compiled = std::move(c);
}

bool conditions_hold(const Rule& rule, const ExactSystem& s) {
  const CompiledRule& c = compiled_of(rule);
  if (s.dim() != rule.dim || !e_pattern_matches(rule, s)) return false;
  std::vector<Rational> vals = c.space.values(s);
  return all_vanish(c.conditions, c.space, vals) && none_vanish(c.guards, c.space, vals);
}

std::vector<std::array<Rational, 3>> solve_abg(const Rule& rule, const ExactSystem& s) {
  const CompiledRule& c = compiled_of(rule);
  if (rule.fixed_abg) return {*rule.fixed_abg};
  std::vector<Rational> vals = c.space.values(s);
  std::vector<std::vector<Rational>> rows;
  for (const LaurentPoly& p : c.abg_constraints) {
    std::vector<Rational> row;
    for (int k = 0; k < 3; ++k) {
      std::vector<Rational> at = vals;
      at[c.space.alpha() + k] = 1;
      auto v = eval(p, c.space, at);
      if (!v) throw std::logic_error("constraint of " + rule.id + " is not polynomial");
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::array<Rational, 3>> out;
  if (rows.empty()) {
    for (int k = 0; k < 3; ++k) {
      std::array<Rational, 3> unit{};
      unit[k] = 1;
      out.push_back(unit);
    }
    return out;
  }
  for (const RVector& v : nullspace(make_matrix(rows))) out.push_back({v(0), v(1), v(2)});
  return out;
}

std::optional<Rational> evaluate_formula(const std::string& text, const ExactSystem& s,
                                         const Values& extra) {
  ParamSpace space(s.dim());
  std::vector<Rational> vals = space.values(s);
  assign(vals, space, extra);
  try {
    Expr e = simplify(parse_formula(text, numeric_resolver(space, vals)));
    if (e.is_constant() && e.value().is_rational()) return e.value().rational();
  } catch (const FormulaError&) {
  }
  return std::nullopt;
}

RuleOutcome apply_rule(const Rule& rule, const ExactSystem& s) {
  RuleOutcome out;
  if (!conditions_hold(rule, s)) return out;
  const CompiledRule& c = compiled_of(rule);
  const int n = s.dim();
  const std::vector<Rational> base_vals = c.space.values(s);

  std::vector<AbgCandidate> candidates;
  if (rule.abg_hook) {
    candidates = rule.abg_hook(s);
  } else if (rule.ansatz == Ansatz::kPlanar) {
    candidates.push_back(AbgCandidate{});
  } else {
    for (const auto& abg : solve_abg(rule, s)) candidates.push_back(AbgCandidate{abg, {}});
  }

  std::vector<std::string> failures;
  if (candidates.empty()) failures.push_back("no admissible (alpha, beta, gamma)");
  for (const AbgCandidate& cand : candidates) {
    if (rule.ansatz != Ansatz::kPlanar && !rule.factor_hook &&
        cand.abg[0].is_zero() && cand.abg[1].is_zero() && cand.abg[2].is_zero()) {
      failures.push_back("zero skew matrix");
      continue;
    }
    Values named = cand.values;
    for (int k = 0; k < 3; ++k) named[kAbgNames[k]] = cand.abg[k];
    std::vector<std::string> notes;

    IntegratingFactor factor;
    if (rule.factor_hook) {
      auto choice = rule.factor_hook(s, cand.abg);
      if (!choice) {
        failures.push_back("integrating factor unavailable");
        continue;
      }
      factor = choice->factor;
      for (const auto& [k, v] : choice->values) named[k] = v;
    } else {
      factor.ansatz = rule.ansatz;
      factor.abg = cand.abg;
      ExponentSolve sol = solve_exponents(s, factor, rule.fixed_l);
      if (sol.status == LinearSolve::Status::kInfeasible) {
        failures.push_back("exponent system infeasible");
        continue;
      }
      if (sol.status == LinearSolve::Status::kUnderdetermined) {
        if (rule.require_unique_l) {
          failures.push_back("exponent system not of full rank");
          continue;
        }
        notes.push_back("exponents underdetermined; free exponents set to 0");
      }
      factor.l = sol.l;
    }
    for (int i = 0; i < n; ++i) named["l" + std::to_string(i + 1)] = factor.l[i];

    std::vector<Rational> vals = base_vals;
    assign(vals, c.space, named);
    if (!all_vanish(c.post_conditions, c.space, vals)) continue;  // another subcase
    if (!none_vanish(c.post_guards, c.space, vals)) {
      failures.push_back("nondegeneracy guard vanishes after solving");
      continue;
    }
    if (!is_integrating_factor(s, factor)) {
      failures.push_back("curl residual is not zero");
      continue;
    }

    Detection d;
    d.rule_id = rule.id;
    d.description = rule.description;
    d.perm = Permutation::identity(n);
    d.factor = factor;
    d.values = named;

    std::optional<ClosedForm> h;
    if (!rule.printed_h.empty()) {
      try {
        Expr t = parse_formula(rule.printed_h, numeric_resolver(c.space, vals));
        h = to_closed_form(t, n);
        if (!h) notes.push_back("template leaves the closed-form family");
      } catch (const FormulaError& err) {
        notes.push_back(std::string("template undefined: ") + err.what());
      }
      if (h && h->is_constant()) {
        notes.push_back("template is constant");
        h.reset();
      } else if (h && !lie_vanishes_exactly(*h, s)) {
        notes.push_back("template fails the exact Lie check");
        h.reset();
      }
      if (h) d.source = "template";
    }
    if (!h) {
      auto grad = gradient_field(s, factor);
      if (grad) h = integrate_gradient(*grad);
      if (h && (h->is_constant() || !lie_vanishes_exactly(*h, s))) h.reset();
      if (!h) {
        failures.push_back("no closed-form integral: " + join(notes));
        continue;
      }
      d.source = "derived";
      d.template_deviation = !rule.printed_h.empty();
    }
    d.integral = to_expr(*h);

    for (const auto& [name, formula] : rule.printed_l) {
      ExponentCheck chk;
      chk.name = name;
      chk.formula = formula;
      Values extra = named;
      extra.erase(name);
      chk.printed = evaluate_formula(formula, s, extra);
      chk.solved = named.count(name) ? named.at(name) : Rational(0);
      chk.agrees = chk.printed && *chk.printed == chk.solved;
      d.exponent_checks.push_back(std::move(chk));
    }
    for (std::size_t k = 0; k < c.informational.size(); ++k) {
      auto v = eval(c.informational[k], c.space, vals);
      notes.push_back("listed condition " + rule.informational[k] + " = " +
                      (v ? to_string(*v) : std::string("undefined")));
    }
    d.notes = std::move(notes);
    out.detections.push_back(std::move(d));
  }
  // A rule without a printed gate is a pure search; its misses are not news.
  if (out.detections.empty() && !failures.empty() && !rule.conditions.empty()) {
    out.diagnostics.push_back(Diagnostic{rule.id, Permutation::identity(n), join(failures)});
  }
  return out;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 4);
  std::uniform_int_distribution<int> den(1, 3);
  std::bernoulli_distribution negative(0.5);
  int p = num(rng);
  return Rational(Integer(negative(rng) ? -p : p), Integer(den(rng)));
}

namespace {

// Solves one condition for `dep` when, after substituting every known value,
// it is affine in dep and free of the other pending parameters.
std::optional<Rational> solve_for(const LaurentPoly& cond, int dep,
                                  const std::vector<int>& pending, const ParamSpace& space,
                                  const std::vector<Rational>& vals) {
  const int n = space.dim();
  LaurentPoly q = cond;
  for (int k = 0; k < space.size(); ++k) {
    bool is_pending = std::find(pending.begin(), pending.end(), k) != pending.end();
    if (!is_pending && q.depends_on(n + k)) q = q.substitute(n + k, vals[k]);
  }
  for (int k : pending) {
    if (k != dep && q.depends_on(n + k)) return std::nullopt;
  }
  if (!q.depends_on(n + dep)) return std::nullopt;
  Rational slope(0), constant(0);
  for (const auto& [e, coef] : q.terms()) {
    if (e[n + dep] == 1) {
      slope += coef;
    } else if (e[n + dep] == 0) {
      constant += coef;
    } else {
      return std::nullopt;
    }
  }
  if (slope.is_zero()) return std::nullopt;
  return -constant / slope;
}

}  // namespace

std::optional<ExactSystem> sample_on_manifold(const Rule& rule, std::mt19937_64& rng,
                                              int max_attempts) {
  const CompiledRule& c = compiled_of(rule);
  const ParamSpace& space = c.space;
  const int n = rule.dim;
  std::vector<LaurentPoly> conds = c.conditions;
  conds.insert(conds.end(), c.sampler_conditions.begin(), c.sampler_conditions.end());
  std::vector<int> deps;
  for (const std::string& name : rule.sampler_deps) deps.push_back(*space.index(name));

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::optional<ExactSystem> s;
    if (rule.custom_sampler) {
      s = rule.custom_sampler(rng);
      if (!s) continue;
    } else {
      std::vector<Rational> vals(static_cast<std::size_t>(space.size()), Rational(0));
      for (int i = 0; i < n; ++i) {
        vals[space.b(i)] = random_rational(rng);
        for (int j = 0; j < n; ++j) vals[space.a(i, j)] = random_rational(rng);
        bool zero_e = i < static_cast<int>(rule.e_pattern.size()) && rule.e_pattern[i] == 0;
        vals[space.e(i)] = zero_e ? Rational(0) : random_rational(rng);
      }
      bool ok = true;
      for (std::size_t k = 0; k < deps.size() && ok; ++k) {
        std::vector<int> pending(deps.begin() + static_cast<std::ptrdiff_t>(k), deps.end());
        std::optional<Rational> v;
        for (const LaurentPoly& cond : conds) {
          v = solve_for(cond, deps[k], pending, space, vals);
          if (v) break;
        }
        if (!v) ok = false;
        else vals[deps[k]] = *v;
      }
      if (!ok || !all_vanish(conds, space, vals)) continue;
      ExactSystem sys(n);
      for (int i = 0; i < n; ++i) {
        sys.b(i) = vals[space.b(i)];
        sys.e(i) = vals[space.e(i)];
        for (int j = 0; j < n; ++j) sys.A(i, j) = vals[space.a(i, j)];
      }
      s = std::move(sys);
    }
    if (!conditions_hold(rule, *s)) continue;
    if (apply_rule(rule, *s).detections.empty()) continue;
    return s;
  }
  return std::nullopt;
}

}  // namespace lvfi
