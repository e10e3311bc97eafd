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

#include "lvfi/detect.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "lvfi/catalog2d.hpp"
#include "lvfi/catalog3d.hpp"
#include "lvfi/closed_form.hpp"

namespace lvfi {

const std::vector<Rule>& catalog(int dim) {
  if (dim == 2) return catalog2d();
  if (dim == 3) return catalog3d();
  throw InputError("dimension must be 2 or 3");
}

const Rule& find_rule(std::string_view id) {
  for (int dim : {2, 3}) {
    for (const Rule& r : catalog(dim)) {
      if (r.id == id) return r;
    }
  }
  throw InputError("unknown rule id '" + std::string(id) + "'");
}

std::vector<std::string> rule_ids() {
  std::vector<std::string> out;
  for (int dim : {2, 3}) {
    for (const Rule& r : catalog(dim)) out.push_back(r.id);
  }
  return out;
}

ConditionReport rule_conditions(std::string_view id) {
  const Rule& r = find_rule(id);
  ConditionReport out;
  out.id = r.id;
  out.description = r.description;
  out.dim = r.dim;
  out.ansatz = r.ansatz;
  for (std::size_t i = 0; i < r.e_pattern.size(); ++i) {
    std::string e = "e" + std::to_string(i + 1);
    if (r.e_pattern[i] == 0) out.residuals.push_back(e);
    if (r.e_pattern[i] == 1) out.guards.push_back(e + " != 0");
  }
  out.residuals.insert(out.residuals.end(), r.conditions.begin(), r.conditions.end());
  for (const std::string& g : r.guards) out.guards.push_back(g + " != 0");
  out.informational = r.informational;
  out.abg_constraints = r.abg_constraints;
  out.printed_h = r.printed_h;
  return out;
}

namespace {

// True if grad a and grad b are parallel with one ratio at a few fixed
// points, i.e. b = k a + const. Catches relabelled copies of an integral
// whose log arguments differ by a constant factor.
bool same_integral(const Expr& a, const Expr& b, int dim) {
  std::vector<Expr> ga, gb;
  for (int i = 0; i < dim; ++i) {
    ga.push_back(diff(a, i));
    gb.push_back(diff(b, i));
  }
  std::optional<double> ratio;
  int used = 0;
  for (int k = 0; k < 5; ++k) {
    std::vector<double> x;
    for (int i = 0; i < dim; ++i) x.push_back(0.7 + 0.13 * k + 0.31 * i - 0.05 * k * i);
    std::vector<double> u, v;
    try {
      for (int i = 0; i < dim; ++i) {
        u.push_back(eval(ga[i], x));
        v.push_back(eval(gb[i], x));
      }
    } catch (const DomainError&) {
      continue;
    }
    double nu = 0, nv = 0;
    for (int i = 0; i < dim; ++i) {
      nu = std::max(nu, std::fabs(u[i]));
      nv = std::max(nv, std::fabs(v[i]));
    }
    if (nu == 0 || nv == 0) {
      if (nu != nv) return false;
      ++used;
      continue;
    }
    // Ratio from the largest component of u.
    int m = 0;
    for (int i = 1; i < dim; ++i)
      if (std::fabs(u[i]) > std::fabs(u[m])) m = i;
    double r = v[m] / u[m];
    for (int i = 0; i < dim; ++i)
      if (std::fabs(v[i] - r * u[i]) > 1e-9 * nv) return false;
    if (ratio && std::fabs(r - *ratio) > 1e-9 * std::fabs(*ratio)) return false;
    ratio = r;
    ++used;
  }
  return used >= 3;
}

}  // namespace

Expr canonical_integral(const Expr& h, int dim) {
  auto cf = to_closed_form(h, dim);
  return cf ? to_expr(*cf) : simplify(h);
}

RuleOutcome apply_rule_closed(const Rule& rule, const ExactSystem& s) {
  RuleOutcome out;
  for (const Permutation& p : Permutation::all(s.dim())) {
    RuleOutcome part = apply_rule(rule, permute_system(s, p));
    for (Detection& d : part.detections) {
      d.perm = p;
      d.integral = canonical_integral(relabel(d.integral, p.images()), s.dim());
      out.detections.push_back(std::move(d));
    }
    for (Diagnostic& g : part.diagnostics) {
      g.perm = p;
      out.diagnostics.push_back(std::move(g));
    }
  }
  return out;
}

DetectionResult detect(const ExactSystem& s) {
  DetectionResult out;
  for (const Rule& rule : catalog(s.dim())) {
    RuleOutcome o = apply_rule_closed(rule, s);
    const std::size_t first = out.detections.size();
    for (Detection& d : o.detections) {
      // A relabelling often yields a multiple of H plus a constant; keep one.
      bool dup = false;
      for (std::size_t k = first; k < out.detections.size() && !dup; ++k) {
        const Expr& kept = out.detections[k].integral;
        dup = to_string(kept) == to_string(d.integral) || same_integral(kept, d.integral, s.dim());
      }
      if (!dup) out.detections.push_back(std::move(d));
    }
    for (Diagnostic& g : o.diagnostics) out.diagnostics.push_back(std::move(g));
  }
  return out;
}

DetectionResult detect(const LVSystem& s) { return detect(s.exact()); }

DetectionResult detect2d(const LVSystem& s) {
  if (s.dim() != 2) throw InputError("detect2d needs a planar system");
  return detect(s);
}

DetectionResult detect3d(const LVSystem& s) {
  if (s.dim() != 3) throw InputError("detect3d needs a three-dimensional system");
  return detect(s);
}

}  // namespace lvfi
