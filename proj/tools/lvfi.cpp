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

// lvfi: detect and verify first integrals of Lotka-Volterra systems.
//
// Exit codes: 0 found or passed, 1 input error, 2 internal or domain error,
// 3 clean negative.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lvfi/closed_form.hpp"
#include "lvfi/detect.hpp"
#include "lvfi/formula.hpp"
#include "lvfi/oracle.hpp"
#include "lvfi/report.hpp"
#include "lvfi/verify.hpp"

namespace {

using namespace lvfi;

constexpr int kFound = 0;
constexpr int kInputError = 1;
constexpr int kInternalError = 2;
constexpr int kNegative = 3;

struct RunConfig {
  std::string input;
  std::uint64_t seed = 42;
  int points = 50;
  std::string region_text = "0.1,10";
  Region region;
  double t_end = 10.0;
  double step = 1e-3;
  std::string method_text = "rk4";
  Method method = Method::kRk4;
  double tol_lie = 1e-10;
  double tol_drift = 1e-6;
  std::string format = "pretty";
  bool no_verify = false;

  // verify
  std::string integral_file;
  std::string integral_text;
  std::string x0_text;
  // oracle
  std::string ansatz = "planar";
  std::string params_text = "0,0,0";
  std::string l_text;
  // sweep
  std::string rule;
  int samples = 20;

  bool json() const { return format == "json"; }
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::vector<double> parse_doubles(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const std::string& s : split(text, ',')) {
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError(std::string("malformed ") + what + " '" + text + "'");
    }
  }
  return out;
}

std::vector<Rational> parse_rationals(const std::string& text, const char* what) {
  std::vector<Rational> out;
  for (const std::string& s : split(text, ',')) {
    auto r = parse_rational(s);
    if (!r) throw InputError(std::string("malformed ") + what + " '" + text + "'");
    out.push_back(*r);
  }
  return out;
}

void finish_config(RunConfig& cfg) {
  std::vector<double> r = parse_doubles(cfg.region_text, "region");
  if (r.size() != 2 || !(r[0] < r[1])) throw InputError("region must be lo,hi with lo < hi");
  cfg.region = Region{r[0], r[1]};
  if (cfg.points < 1) throw InputError("--points must be at least 1");
  if (!(cfg.step > 0)) throw InputError("--step must be positive");
  if (!(cfg.t_end > 0)) throw InputError("--t-end must be positive");
  if (cfg.method_text == "rk4") {
    cfg.method = Method::kRk4;
  } else if (cfg.method_text == "rk45") {
    cfg.method = Method::kRk45;
  } else {
    throw InputError("--method must be rk4 or rk45");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LVSystem load_system(const RunConfig& cfg) {
  if (cfg.input.empty()) throw InputError("--input is required");
  return parse_system(read_file(cfg.input));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const std::string& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

struct Verification {
  double lie = 0.0;
  std::optional<ConservationRun> run;
  std::string error;
};

Verification verify_integral(const Expr& h, const LVSystem& s, const RunConfig& cfg) {
  Verification v;
  try {
    v.lie = lie_check(h, s, cfg.points, cfg.region, cfg.seed);
    v.run = conservation_search(h, s, cfg.t_end, cfg.step, cfg.method, cfg.region, cfg.seed);
    if (v.run) v.run->report.lie_max = v.lie;
  } catch (const DomainError& ex) {
    v.error = ex.what();
  }
  return v;
}

Json verification_json(const Verification& v) {
  Json j;
  if (!v.error.empty()) {
    j["error"] = v.error;
    return j;
  }
  j["lie_max"] = v.lie;
  if (v.run) {
    std::vector<double> x0(v.run->x0.data(), v.run->x0.data() + v.run->x0.size());
    j["x0"] = x0;
    j["conservation"] = conservation_to_json(v.run->report);
    j["horizon"] = v.run->horizon;
    j["truncated"] = v.run->truncated;
  } else {
    j["conservation"] = nullptr;
  }
  return j;
}

std::string verification_text(const Verification& v) {
  if (!v.error.empty()) return "verification failed: " + v.error;
  std::string out = "lie_max " + fmt(v.lie);
  if (v.run) {
    std::vector<std::string> x0;
    for (Eigen::Index i = 0; i < v.run->x0.size(); ++i) x0.push_back(fmt(v.run->x0(i)));
    out += ", max_rel_drift " + fmt(v.run->report.max_rel_drift) + " from x0 = (" +
           join(x0, ", ") + ")";
    if (v.run->truncated) out += " up to t = " + fmt(v.run->horizon);
  } else {
    out += ", no in-domain trajectory found";
  }
  return out;
}

int cmd_detect(const RunConfig& cfg) {
  LVSystem s = load_system(cfg);
  DetectionResult res = detect(s);
  Json out;
  out["system"] = system_to_json(s);
  out["detections"] = Json::array();
  if (!cfg.json()) {
    std::cout << "system: dim " << s.dim()
              << (s.kind() == ScalarKind::kFloat ? ", float input (lifted exactly)" : "") << "\n";
  }
  for (const Detection& d : res.detections) {
    Json dj = detection_to_json(d);
    std::optional<Verification> v;
    if (!cfg.no_verify) {
      v = verify_integral(d.integral, s, cfg);
      dj["verification"] = verification_json(*v);
    }
    out["detections"].push_back(std::move(dj));
    if (cfg.json()) continue;
    std::cout << "\n" << d.rule_id << "  " << d.description << "\n";
    if (!d.perm.is_identity()) std::cout << "  coordinates relabelled by " << d.perm.to_string() << "\n";
    std::vector<std::string> params;
    for (const auto& [k, val] : d.values) params.push_back(k + " = " + to_string(val));
    std::cout << "  parameters: " << join(params, ", ") << "\n";
    std::cout << "  H = " << to_string(d.integral) << "\n";
    std::cout << "  source: " << d.source << (d.template_deviation ? " (template deviation)" : "")
              << "\n";
    for (const ExponentCheck& c : d.exponent_checks) {
      std::cout << "  listed " << c.name << " = " << c.formula << ": "
                << (c.printed ? to_string(*c.printed) : std::string("undefined")) << ", solved "
                << to_string(c.solved) << (c.agrees ? " (agrees)" : " (differs)") << "\n";
    }
    for (const std::string& n : d.notes) std::cout << "  note: " << n << "\n";
    if (v) std::cout << "  " << verification_text(*v) << "\n";
  }
  Json diags = Json::array();
  for (const Diagnostic& g : res.diagnostics) diags.push_back(diagnostic_to_json(g));
  out["diagnostics"] = diags;
  if (cfg.json()) {
    std::cout << out.dump(2) << "\n";
  } else {
    if (res.detections.empty()) std::cout << "no first integral found within Ansatz catalog\n";
    for (const Diagnostic& g : res.diagnostics) {
      std::cout << "candidate " << g.rule_id << " under " << g.perm.to_string()
                << " failed: " << g.reason << "\n";
    }
  }
  return res.detections.empty() ? kNegative : kFound;
}

Expr load_integral(const RunConfig& cfg, int dim) {
  if (!cfg.integral_file.empty() == !cfg.integral_text.empty()) {
    throw InputError("give exactly one of --integral FILE or --expr TEXT");
  }
  Expr h;
  if (!cfg.integral_file.empty()) {
    Json j;
    try {
      j = Json::parse(read_file(cfg.integral_file));
    } catch (const nlohmann::json::parse_error& ex) {
      throw InputError(std::string("malformed integral JSON: ") + ex.what());
    }
    h = expr_from_json(j.contains("integral_ast") ? j.at("integral_ast") : j);
  } else {
    h = parse_formula(cfg.integral_text, coordinate_resolver(dim));
  }
  if (max_var_index(h) >= dim) throw InputError("integral mentions a coordinate beyond the system");
  return h;
}

int cmd_verify(const RunConfig& cfg) {
  LVSystem s = load_system(cfg);
  Expr h = load_integral(cfg, s.dim());
  double lie = lie_check(h, s, cfg.points, cfg.region, cfg.seed);
  // An explicit x0 is used as given; otherwise search for a moving,
  // well-conditioned orbit as detect does.
  std::optional<ConservationRun> run;
  if (!cfg.x0_text.empty()) {
    std::vector<double> v = parse_doubles(cfg.x0_text, "x0");
    if (static_cast<int>(v.size()) != s.dim()) throw InputError("x0 has the wrong dimension");
    Eigen::VectorXd x0 = Eigen::Map<Eigen::VectorXd>(v.data(), s.dim());
    Trajectory tr = integrate(s, x0, cfg.t_end, cfg.step, cfg.method);
    ConservationReport rep = conservation_report(h, tr);
    run = ConservationRun{x0, std::move(tr), rep, 1, cfg.t_end, false};
  } else {
    run = conservation_search(h, s, cfg.t_end, cfg.step, cfg.method, cfg.region, cfg.seed);
  }
  bool pass = lie <= cfg.tol_lie;
  if (run) {
    run->report.lie_max = lie;
    pass = pass && run->report.max_rel_drift <= cfg.tol_drift && !run->report.blew_up;
  }
  if (cfg.json()) {
    Json j;
    j["integral"] = to_string(h);
    j["lie_max"] = lie;
    if (run) {
      std::vector<double> x0(run->x0.data(), run->x0.data() + run->x0.size());
      j["x0"] = x0;
      j["conservation"] = conservation_to_json(run->report);
      j["horizon"] = run->horizon;
      j["truncated"] = run->truncated;
    } else {
      j["conservation"] = nullptr;
    }
    j["method"] = to_string(cfg.method);
    j["step"] = cfg.step;
    j["t_end"] = cfg.t_end;
    j["pass"] = pass;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "H = " << to_string(h) << "\n"
              << "lie_max " << fmt(lie) << " (tolerance " << fmt(cfg.tol_lie) << ")\n";
    if (run) {
      const ConservationReport& rep = run->report;
      std::vector<std::string> x0;
      for (Eigen::Index i = 0; i < run->x0.size(); ++i) x0.push_back(fmt(run->x0(i)));
      std::cout << "x0 = (" << join(x0, ", ") << ")"
                << (run->truncated ? ", orbit truncated at t = " + fmt(run->horizon) : "") << "\n"
                << "H0 " << rep.h0 << ", max_abs_drift " << fmt(rep.max_abs_drift)
                << ", max_rel_drift " << fmt(rep.max_rel_drift) << " (tolerance "
                << fmt(cfg.tol_drift) << ")\n"
                << rep.sample_count << " states, " << to_string(cfg.method) << " step "
                << cfg.step << (rep.blew_up ? ", stopped at blow-up" : "") << "\n";
    } else {
      std::cout << "no usable orbit found; conservation not checked\n";
    }
    std::cout << (pass ? "pass" : "fail") << "\n";
  }
  return pass ? kFound : kNegative;
}

int cmd_oracle(const RunConfig& cfg) {
  LVSystem s = load_system(cfg);
  const ExactSystem& e = s.exact();
  auto ansatz = parse_ansatz(cfg.ansatz);
  if (!ansatz) throw InputError("unknown ansatz '" + cfg.ansatz + "'");
  if ((*ansatz == Ansatz::kPlanar) != (s.dim() == 2)) {
    throw InputError("ansatz " + cfg.ansatz + " does not fit a system of dimension " +
                     std::to_string(s.dim()));
  }
  std::vector<Rational> p = parse_rationals(cfg.params_text, "params");
  if (p.size() != 3) throw InputError("--params needs three values");
  std::vector<LaurentPoly> res;
  if (*ansatz == Ansatz::kPlanar) {
    res = {residual_2d(e, p[0], p[1], p[2])};
  } else {
    std::vector<Rational> l(3, Rational(1));
    if (!cfg.l_text.empty()) l = parse_rationals(cfg.l_text, "exponents");
    if (l.size() != 3) throw InputError("--l needs three values");
    res = residual_3d(e, *ansatz, {p[0], p[1], p[2]}, l);
  }
  bool zero = true;
  for (const LaurentPoly& r : res) zero = zero && r.is_zero();
  if (cfg.json()) {
    std::cout << Json{{"ansatz", to_string(*ansatz)}, {"zero", zero},
                      {"residual", residual_to_json(res)}}.dump(2)
              << "\n";
  } else {
    for (std::size_t k = 0; k < res.size(); ++k) {
      for (const auto& [ex, c] : res[k].terms()) {
        std::vector<std::string> parts;
        for (int v : ex) parts.push_back(std::to_string(v));
        std::cout << "component " << k + 1 << "  x^(" << join(parts, ",") << ")  "
                  << to_string(c) << "\n";
      }
    }
    std::cout << (zero ? "residual is identically zero\n" : "residual is nonzero\n");
  }
  return zero ? kFound : kNegative;
}

int cmd_sweep(const RunConfig& cfg) {
  const Rule& rule = find_rule(cfg.rule);
  if (cfg.samples < 1) throw InputError("--samples must be at least 1");
  int drawn = 0, passed = 0, no_start = 0, truncated = 0, deviations = 0;
  double worst_lie = 0.0, worst_drift = 0.0;
  std::map<std::string, std::pair<int, int>> agreement;  // name -> (agree, total)
  Json rows = Json::array();
  for (int k = 0; k < cfg.samples; ++k) {
    std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(k));
    auto s = sample_on_manifold(rule, rng);
    Json row{{"index", k}};
    if (!s) {
      row["status"] = "no sample";
      rows.push_back(row);
      continue;
    }
    ++drawn;
    LVSystem sys = LVSystem::exact(*s);
    RuleOutcome o = apply_rule(rule, *s);
    bool ok = !o.detections.empty();
    if (ok) {
      const Detection& d = o.detections.front();
      ok = is_integrating_factor(*s, d.factor);
      Verification v = verify_integral(d.integral, sys, cfg);
      ok = ok && v.error.empty() && v.lie <= cfg.tol_lie;
      worst_lie = std::max(worst_lie, v.lie);
      if (v.run) {
        worst_drift = std::max(worst_drift, v.run->report.max_rel_drift);
        ok = ok && v.run->report.max_rel_drift <= cfg.tol_drift;
        if (v.run->truncated) ++truncated;
      } else {
        ++no_start;
      }
      if (d.template_deviation) ++deviations;
      for (const ExponentCheck& c : d.exponent_checks) {
        auto& [agree, total] = agreement[c.name + " = " + c.formula];
        agree += c.agrees ? 1 : 0;
        ++total;
      }
      row["system"] = system_to_json(sys);
      row["integral"] = to_string(d.integral);
      row["verification"] = verification_json(v);
    }
    if (ok) ++passed;
    row["status"] = ok ? "pass" : "fail";
    rows.push_back(row);
  }
  if (cfg.json()) {
    Json agree = Json::object();
    for (const auto& [name, counts] : agreement) {
      agree[name] = {{"agree", counts.first}, {"total", counts.second}};
    }
    std::cout << Json{{"rule", rule.id},        {"samples", cfg.samples},
                      {"drawn", drawn},          {"passed", passed},
                      {"worst_lie", worst_lie},  {"worst_drift", worst_drift},
                      {"no_start", no_start},    {"truncated", truncated},
                      {"template_deviations", deviations},
                      {"exponent_checks", agree}, {"results", rows}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << rule.id << ": " << passed << "/" << drawn << " pass (" << cfg.samples
              << " requested)\n"
              << "worst lie_max " << fmt(worst_lie) << ", worst max_rel_drift " << fmt(worst_drift)
              << "\n";
    if (no_start) std::cout << no_start << " samples had no in-domain trajectory\n";
    if (truncated) std::cout << truncated << " samples checked on a truncated orbit\n";
    if (deviations) std::cout << deviations << " samples used the derived integral\n";
    for (const auto& [name, counts] : agreement) {
      std::cout << "listed " << name << ": agrees on " << counts.first << "/" << counts.second
                << "\n";
    }
  }
  return passed == cfg.samples ? kFound : kNegative;
}

int cmd_catalog(const RunConfig& cfg) {
  Json all = Json::array();
  for (const std::string& id : rule_ids()) {
    ConditionReport c = rule_conditions(id);
    if (cfg.json()) {
      all.push_back(condition_report_to_json(c));
      continue;
    }
    std::cout << c.id << "  (" << to_string(c.ansatz) << ")  " << c.description << "\n";
    if (!c.residuals.empty()) std::cout << "  vanish: " << join(c.residuals, ", ") << "\n";
    if (!c.guards.empty()) std::cout << "  guards: " << join(c.guards, ", ") << "\n";
    if (!c.abg_constraints.empty()) {
      std::cout << "  matrix weights: " << join(c.abg_constraints, ", ") << "\n";
    }
    if (!c.printed_h.empty()) std::cout << "  template: " << c.printed_h << "\n";
  }
  if (cfg.json()) std::cout << all.dump(2) << "\n";
  return kFound;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "random seed")->envname("LVFI_SEED");
  cmd->add_option("--points", cfg.points, "Lie-check sample points");
  cmd->add_option("--region", cfg.region_text, "sampling box lo,hi");
  cmd->add_option("--t-end", cfg.t_end, "integration end time");
  cmd->add_option("--step", cfg.step, "integration step");
  cmd->add_option("--method", cfg.method_text, "rk4 or rk45");
  cmd->add_option("--tol-lie", cfg.tol_lie, "Lie-check tolerance");
  cmd->add_option("--tol-drift", cfg.tol_drift, "relative drift tolerance");
  cmd->add_option("--format", cfg.format, "pretty or json")
      ->check(CLI::IsMember({"pretty", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First integrals of Lotka-Volterra systems with constant terms"};
  app.require_subcommand(1);
  RunConfig cfg;

  CLI::App* det = app.add_subcommand("detect", "run the rule catalog on a system");
  det->add_option("--input", cfg.input, "system JSON")->required();
  det->add_flag("--no-verify", cfg.no_verify, "skip numerical verification");
  add_common(det, cfg);

  CLI::App* ver = app.add_subcommand("verify", "check a candidate integral numerically");
  ver->add_option("--input", cfg.input, "system JSON")->required();
  ver->add_option("--integral", cfg.integral_file, "integral as JSON AST");
  ver->add_option("--expr", cfg.integral_text, "integral as a formula in x1, x2, x3");
  ver->add_option("--x0", cfg.x0_text, "start point, comma separated");
  add_common(ver, cfg);

  CLI::App* ora = app.add_subcommand("oracle", "dump the curl residual");
  ora->add_option("--input", cfg.input, "system JSON")->required();
  ora->add_option("--ansatz", cfg.ansatz, "planar, t1 or t2");
  ora->add_option("--params", cfg.params_text, "alpha,beta,gamma");
  ora->add_option("--l", cfg.l_text, "exponents l1,l2,l3 (3D)");
  add_common(ora, cfg);

  CLI::App* swp = app.add_subcommand("sweep", "sample a rule's condition manifold");
  swp->add_option("--rule", cfg.rule, "rule id")->required();
  swp->add_option("--samples", cfg.samples, "number of samples");
  add_common(swp, cfg);

  CLI::App* cat = app.add_subcommand("catalog", "print the rule table");
  add_common(cat, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    int code = app.exit(ex);
    return code == 0 ? 0 : kInputError;
  }

  try {
    finish_config(cfg);
    if (det->parsed()) return cmd_detect(cfg);
    if (ver->parsed()) return cmd_verify(cfg);
    if (ora->parsed()) return cmd_oracle(cfg);
    if (swp->parsed()) return cmd_sweep(cfg);
    return cmd_catalog(cfg);
  } catch (const InputError& ex) {
    std::cerr << "input error: " << ex.what() << "\n";
    return kInputError;
  } catch (const DomainError& ex) {
    std::cerr << "domain error: " << ex.what() << "\n";
    return kInternalError;
  } catch (const std::domain_error& ex) {
    std::cerr << "domain error: " << ex.what() << "\n";
    return kInternalError;
  } catch (const std::exception& ex) {
    std::cerr << "internal error: " << ex.what() << "\n";
    return kInternalError;
  }
}
