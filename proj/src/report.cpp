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

#include "lvfi/report.hpp"

#include <cmath>

namespace lvfi {

namespace {

Json scalar_json(const Scalar& v) {
  if (v.is_rational()) return to_string(v.rational());
  return v.to_double();
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) {
    auto r = parse_rational(j.get<std::string>());
    if (!r) throw InputError("malformed rational '" + j.get<std::string>() + "'");
    return Scalar(*r);
  }
  if (j.is_number_integer()) return Scalar(Rational(j.get<long long>()));
  if (j.is_number()) return Scalar::from_double(j.get<double>());
  throw InputError("expected a number or a \"p/q\" string");
}

const char* op_name(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::kConst: return "const";
    case Expr::Kind::kVar: return "var";
    case Expr::Kind::kAdd: return "add";
    case Expr::Kind::kMul: return "mul";
    case Expr::Kind::kPow: return "pow";
    case Expr::Kind::kLnAbs: return "ln_abs";
    case Expr::Kind::kExp: return "exp";
  }
  return "?";
}

Json rationals_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const Rational& r : v) out.push_back(to_string(r));
  return out;
}

}  // namespace

Json expr_to_json(const Expr& h) {
  Json j;
  j["op"] = op_name(h.kind());
  switch (h.kind()) {
    case Expr::Kind::kConst:
      j["value"] = scalar_json(h.value());
      break;
    case Expr::Kind::kVar:
      j["index"] = h.index();
      break;
    case Expr::Kind::kPow:
      j["base"] = expr_to_json(h.args()[0]);
      j["exponent"] = scalar_json(h.exponent());
      break;
    default: {
      Json args = Json::array();
      for (const Expr& a : h.args()) args.push_back(expr_to_json(a));
      j["args"] = std::move(args);
    }
  }
  return j;
}

Expr expr_from_json(const Json& j) {
  try {
    const std::string op = j.at("op").get<std::string>();
    if (op == "const") return Expr::constant(scalar_from_json(j.at("value")));
    if (op == "var") {
      int i = j.at("index").get<int>();
      if (i < 0) throw InputError("negative variable index");
      return Expr::var(i);
    }
    if (op == "pow") return Expr::pow(expr_from_json(j.at("base")), scalar_from_json(j.at("exponent")));
    std::vector<Expr> args;
    for (const Json& a : j.at("args")) args.push_back(expr_from_json(a));
    if (op == "add" || op == "mul") {
      if (args.empty()) throw InputError("empty " + op);
      return op == "add" ? Expr::add(std::move(args)) : Expr::mul(std::move(args));
    }
    if (op == "ln_abs" || op == "exp") {
      if (args.size() != 1) throw InputError(op + " takes one argument");
      return op == "ln_abs" ? Expr::ln_abs(args[0]) : Expr::exp(args[0]);
    }
    throw InputError("unknown op '" + op + "'");
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed expression: ") + ex.what());
  }
}

Json system_to_json(const LVSystem& s) { return Json::parse(serialize_system(s)); }

Json factor_to_json(const IntegratingFactor& r) {
  Json j;
  j["ansatz"] = to_string(r.ansatz);
  if (r.ansatz != Ansatz::kPlanar) {
    j["abg"] = rationals_json({r.abg[0], r.abg[1], r.abg[2]});
  }
  j["l"] = rationals_json(r.l);
  if (!r.c.empty()) j["c"] = rationals_json(r.c);
  if (!r.polys.empty()) {
    Json ps = Json::array();
    std::vector<std::string> names;
    for (int i = 0; i < (r.polys.front().first.nvars()); ++i) {
      names.push_back("x" + std::to_string(i + 1));
    }
    for (const auto& [p, m] : r.polys) {
      ps.push_back({{"polynomial", p.to_string(names)}, {"power", to_string(m)}});
    }
    j["polynomial_factors"] = std::move(ps);
  }
  return j;
}

Json detection_to_json(const Detection& d) {
  Json j;
  j["rule"] = d.rule_id;
  j["description"] = d.description;
  j["permutation"] = d.perm.to_string();
  Json values = Json::object();
  for (const auto& [k, v] : d.values) values[k] = to_string(v);
  j["parameters"] = std::move(values);
  j["integrating_factor"] = factor_to_json(d.factor);
  j["integral"] = to_string(d.integral);
  j["integral_ast"] = expr_to_json(d.integral);
  j["source"] = d.source;
  j["template_deviation"] = d.template_deviation;
  if (!d.exponent_checks.empty()) {
    Json checks = Json::array();
    for (const ExponentCheck& c : d.exponent_checks) {
      checks.push_back({{"name", c.name},
                        {"formula", c.formula},
                        {"printed", c.printed ? Json(to_string(*c.printed)) : Json(nullptr)},
                        {"solved", to_string(c.solved)},
                        {"agrees", c.agrees}});
    }
    j["exponent_checks"] = std::move(checks);
  }
  j["notes"] = d.notes;
  return j;
}

Json diagnostic_to_json(const Diagnostic& d) {
  return {{"rule", d.rule_id}, {"permutation", d.perm.to_string()}, {"reason", d.reason}};
}

Json condition_report_to_json(const ConditionReport& c) {
  Json j;
  j["id"] = c.id;
  j["description"] = c.description;
  j["dim"] = c.dim;
  j["ansatz"] = to_string(c.ansatz);
  j["residuals"] = c.residuals;
  j["guards"] = c.guards;
  if (!c.informational.empty()) j["informational"] = c.informational;
  if (!c.abg_constraints.empty()) j["abg_constraints"] = c.abg_constraints;
  if (!c.printed_h.empty()) j["template"] = c.printed_h;
  return j;
}

Json conservation_to_json(const ConservationReport& r) {
  auto num = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
  return {{"H0", num(r.h0)},
          {"max_abs_drift", num(r.max_abs_drift)},
          {"max_rel_drift", num(r.max_rel_drift)},
          {"lie_max", num(r.lie_max)},
          {"sample_count", r.sample_count},
          {"blew_up", r.blew_up}};
}

Json residual_to_json(const std::vector<LaurentPoly>& residual) {
  Json out = Json::array();
  for (const LaurentPoly& p : residual) {
    Json comp = Json::array();
    for (const auto& [e, c] : p.terms()) {
      comp.push_back({{"exponents", e}, {"coefficient", to_string(c)}});
    }
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace lvfi
