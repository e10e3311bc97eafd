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

#include "lvfi/oracle.hpp"

#include <stdexcept>

namespace lvfi {

std::string to_string(Ansatz a) {
  switch (a) {
    case Ansatz::kPlanar:
      return "planar";
    case Ansatz::kT1:
      return "T1";
    case Ansatz::kT2:
      return "T2";
  }
  return "?";
}

std::optional<Ansatz> parse_ansatz(std::string_view text) {
  if (text == "planar") return Ansatz::kPlanar;
  if (text == "T1" || text == "t1") return Ansatz::kT1;
  if (text == "T2" || text == "t2") return Ansatz::kT2;
  return std::nullopt;
}

bool IntegratingFactor::is_monomial() const {
  for (const Rational& ci : c) {
    if (!ci.is_zero()) return false;
  }
  return polys.empty();
}

PolySystem lift_system(const ExactSystem& s, int nvars) {
  PolySystem out;
  out.dim = s.dim();
  for (int i = 0; i < s.dim(); ++i) {
    out.b.push_back(LaurentPoly::constant(nvars, s.b(i)));
    out.e.push_back(LaurentPoly::constant(nvars, s.e(i)));
    std::vector<LaurentPoly> row;
    for (int j = 0; j < s.dim(); ++j) row.push_back(LaurentPoly::constant(nvars, s.A(i, j)));
    out.a.push_back(std::move(row));
  }
  return out;
}

namespace {

std::vector<LaurentPoly> field(const PolySystem& s, int nvars) {
  std::vector<LaurentPoly> f;
  for (int i = 0; i < s.dim; ++i) {
    LaurentPoly rate = s.b[i];
    for (int j = 0; j < s.dim; ++j) rate += s.a[i][j] * LaurentPoly::variable(nvars, j);
    f.push_back(LaurentPoly::variable(nvars, i) * rate + s.e[i]);
  }
  return f;
}

// M f for the 3D shapes.
std::vector<LaurentPoly> skew_times(Ansatz ansatz, const std::array<LaurentPoly, 3>& abg,
                                    const std::vector<LaurentPoly>& f, int nvars) {
  LaurentPoly al = abg[0], be = abg[1], ga = abg[2];
  if (ansatz == Ansatz::kT2) {
    al = al * LaurentPoly::variable(nvars, 2);
    be = be * LaurentPoly::variable(nvars, 1);
    ga = ga * LaurentPoly::variable(nvars, 0);
  }
  return {-(al * f[1]) - be * f[2], al * f[0] - ga * f[2], be * f[0] + ga * f[1]};
}

}  // namespace

std::vector<LaurentPoly> curl_residual(const PolySystem& s, Ansatz ansatz, const PolyFactor& r) {
  const int n = s.dim;
  if (ansatz == Ansatz::kPlanar ? n != 2 : n != 3)
    throw std::invalid_argument("ansatz does not match the dimension");
  const int nvars = s.b[0].nvars();
  const LaurentPoly one = LaurentPoly::constant(nvars, Rational(1));
  std::vector<LaurentPoly> f = field(s, nvars);

  LaurentPoly d = one;
  for (const auto& [p, m] : r.polys) d *= p;
  std::vector<LaurentPoly> dg;
  for (int i = 0; i < n; ++i) {
    LaurentPoly gi = d * (r.l[i] - one) * LaurentPoly::variable(nvars, i, -1);
    if (!r.c.empty()) gi += d * r.c[i];
    for (std::size_t k = 0; k < r.polys.size(); ++k) {
      LaurentPoly term = r.polys[k].second * r.polys[k].first.derivative(i);
      for (std::size_t j = 0; j < r.polys.size(); ++j) {
        if (j != k) term *= r.polys[j].first;
      }
      gi += term;
    }
    dg.push_back(std::move(gi));
  }

  if (ansatz == Ansatz::kPlanar) {
    LaurentPoly res = dg[0] * f[0] + dg[1] * f[1] + d * (f[0].derivative(0) + f[1].derivative(1));
    return {res};
  }
  std::vector<LaurentPoly> v = skew_times(ansatz, r.abg, f, nvars);
  std::vector<LaurentPoly> curl = {v[2].derivative(1) - v[1].derivative(2),
                                   v[0].derivative(2) - v[2].derivative(0),
                                   v[1].derivative(0) - v[0].derivative(1)};
  return {dg[1] * v[2] - dg[2] * v[1] + d * curl[0], dg[2] * v[0] - dg[0] * v[2] + d * curl[1],
          dg[0] * v[1] - dg[1] * v[0] + d * curl[2]};
}

namespace {

PolyFactor lift_factor(const IntegratingFactor& r, int dim, int nvars) {
  if (static_cast<int>(r.l.size()) != dim) throw std::invalid_argument("exponent count mismatch");
  PolyFactor out;
  for (int k = 0; k < 3; ++k) out.abg[k] = LaurentPoly::constant(nvars, r.abg[k]);
  for (const Rational& li : r.l) out.l.push_back(LaurentPoly::constant(nvars, li));
  for (const Rational& ci : r.c) out.c.push_back(LaurentPoly::constant(nvars, ci));
  for (const auto& [p, m] : r.polys) out.polys.emplace_back(p.extended(nvars), m);
  return out;
}

}  // namespace

std::vector<LaurentPoly> residual(const ExactSystem& s, const IntegratingFactor& r) {
  const int n = s.dim();
  return curl_residual(lift_system(s, n), r.ansatz, lift_factor(r, n, n));
}

bool is_integrating_factor(const ExactSystem& s, const IntegratingFactor& r) {
  for (const LaurentPoly& p : residual(s, r)) {
    if (!p.is_zero()) return false;
  }
  return true;
}

LaurentPoly residual_2d(const ExactSystem& s, const Rational& alpha, const Rational& beta,
                        const Rational& gamma) {
  if (s.dim() != 2) throw std::invalid_argument("residual_2d needs a planar system");
  const Rational& a12 = s.A(0, 1);
  const Rational& a21 = s.A(1, 0);
  if (a12.is_zero() || a21.is_zero())
    throw std::domain_error("separable factor undefined when a12 or a21 is zero");
  IntegratingFactor r;
  r.ansatz = Ansatz::kPlanar;
  r.l = {1 + beta / a12, 1 + gamma / a21};
  r.c = {alpha / a12, -alpha / a21};
  return residual(s, r)[0];
}

std::vector<LaurentPoly> residual_3d(const ExactSystem& s, Ansatz ansatz,
                                     const std::array<Rational, 3>& abg,
                                     const std::vector<Rational>& l) {
  IntegratingFactor r;
  r.ansatz = ansatz;
  r.abg = abg;
  r.l = l;
  return residual(s, r);
}

std::optional<std::vector<PuiseuxPoly>> gradient_field(const ExactSystem& s,
                                                       const IntegratingFactor& r) {
  if (!r.is_monomial()) return std::nullopt;
  const int n = s.dim();
  PolySystem ps = lift_system(s, n);
  std::vector<LaurentPoly> f = field(ps, n);
  std::vector<LaurentPoly> v;
  if (r.ansatz == Ansatz::kPlanar) {
    v = {-f[1], f[0]};
  } else {
    std::array<LaurentPoly, 3> abg;
    for (int k = 0; k < 3; ++k) abg[k] = LaurentPoly::constant(n, r.abg[k]);
    v = skew_times(r.ansatz, abg, f, n);
  }
  PuiseuxPoly::Exponents shift;
  for (const Rational& li : r.l) shift.push_back(li - 1);
  std::vector<PuiseuxPoly> g;
  for (const LaurentPoly& vi : v) g.push_back(to_puiseux(vi).shifted(shift));
  return g;
}

ExponentSolve solve_exponents(const ExactSystem& s, const IntegratingFactor& shape,
                              const std::vector<std::optional<Rational>>& fixed) {
  const int n = s.dim();
  const int nvars = 2 * n;
  IntegratingFactor base = shape;
  base.l.assign(n, Rational(1));
  PolyFactor r = lift_factor(base, n, nvars);
  std::vector<int> unknown_of(n, -1);
  int unknowns = 0;
  for (int i = 0; i < n; ++i) {
    bool is_fixed = i < static_cast<int>(fixed.size()) && fixed[i].has_value();
    if (is_fixed) {
      r.l[i] = LaurentPoly::constant(nvars, *fixed[i]);
    } else {
      r.l[i] = LaurentPoly::variable(nvars, n + i);
      unknown_of[i] = unknowns++;
    }
  }
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const LaurentPoly& comp : curl_residual(lift_system(s, nvars), shape.ansatz, r)) {
    for (const auto& [x, coef] : comp.collect(n)) {
      std::vector<Rational> row(static_cast<std::size_t>(unknowns), Rational(0));
      Rational constant(0);
      for (const auto& [e, c] : coef.terms()) {
        int which = -1;
        int degree = 0;
        for (int i = 0; i < n; ++i) {
          if (e[i] == 0) continue;
          if (e[i] != 1) throw std::logic_error("residual not affine in exponents");
          which = i;
          ++degree;
        }
        if (degree == 0) {
          constant += c;
        } else if (degree == 1 && unknown_of[which] >= 0) {
          row[unknown_of[which]] += c;
        } else {
          throw std::logic_error("residual not affine in exponents");
        }
      }
      rows.push_back(std::move(row));
      rhs.push_back(-constant);
    }
  }
  ExponentSolve out;
  out.l.assign(n, Rational(0));
  for (int i = 0; i < n; ++i) {
    if (unknown_of[i] < 0) out.l[i] = *fixed[i];
  }
  if (unknowns == 0) {
    bool consistent = true;
    for (const Rational& v : rhs) consistent = consistent && v.is_zero();
    out.status = consistent ? LinearSolve::Status::kUnique : LinearSolve::Status::kInfeasible;
    return out;
  }
  if (rows.empty()) {
    out.status = LinearSolve::Status::kUnderdetermined;
    out.free_count = unknowns;
    return out;
  }
  LinearSolve sol = solve_constrained(make_matrix(rows), make_vector(rhs));
  out.status = sol.status;
  if (sol.status == LinearSolve::Status::kInfeasible) return out;
  out.free_count = static_cast<int>(sol.basis.size());
  for (int i = 0; i < n; ++i) {
    if (unknown_of[i] >= 0) out.l[i] = sol.solution(unknown_of[i]);
  }
  return out;
}

std::vector<DerivedCondition> derive_conditions(Ansatz ansatz, int dim,
                                                const std::optional<std::vector<Rational>>& fixed_l) {
  ParamSpace space(dim);
  const int nvars = dim + space.size();
  auto p = [&](int k, int power = 1) { return LaurentPoly::variable(nvars, dim + k, power); };
  PolySystem s;
  s.dim = dim;
  for (int i = 0; i < dim; ++i) {
    s.b.push_back(p(space.b(i)));
    s.e.push_back(p(space.e(i)));
    std::vector<LaurentPoly> row;
    for (int j = 0; j < dim; ++j) row.push_back(p(space.a(i, j)));
    s.a.push_back(std::move(row));
  }
  PolyFactor r;
  r.abg = {p(space.alpha()), p(space.beta()), p(space.gamma())};
  const LaurentPoly one = LaurentPoly::constant(nvars, Rational(1));
  if (ansatz == Ansatz::kPlanar) {
    LaurentPoly inv12 = p(space.a(0, 1), -1);
    LaurentPoly inv21 = p(space.a(1, 0), -1);
    r.l = {one + p(space.beta()) * inv12, one + p(space.gamma()) * inv21};
    r.c = {p(space.alpha()) * inv12, -(p(space.alpha()) * inv21)};
  } else {
    for (int i = 0; i < dim; ++i) {
      r.l.push_back(fixed_l ? LaurentPoly::constant(nvars, (*fixed_l)[i]) : p(space.l(i)));
    }
  }
  std::vector<DerivedCondition> out;
  std::vector<LaurentPoly> comps = curl_residual(s, ansatz, r);
  for (std::size_t k = 0; k < comps.size(); ++k) {
    for (const auto& [x, coef] : comps[k].collect(dim)) {
      out.push_back(DerivedCondition{static_cast<int>(k), x, coef});
    }
  }
  return out;
}

LaurentPoly parameters_only(const LaurentPoly& p, int dim) {
  auto groups = p.collect(dim);
  if (groups.empty()) return LaurentPoly(p.nvars() - dim);
  if (groups.size() != 1) throw std::invalid_argument("polynomial involves coordinates");
  for (int x : groups.begin()->first) {
    if (x != 0) throw std::invalid_argument("polynomial involves coordinates");
  }
  return groups.begin()->second;
}

bool proportional(const LaurentPoly& p, const LaurentPoly& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  const auto& [e, cq] = *q.terms().begin();
  Rational cp = p.coefficient(e);
  if (cp.is_zero()) return false;
  return p == q * (cp / cq);
}

}  // namespace lvfi
