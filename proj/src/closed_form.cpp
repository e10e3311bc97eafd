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

#include "lvfi/closed_form.hpp"

#include <map>

namespace lvfi {

bool ClosedForm::is_constant() const {
  if (!poly.is_constant()) return false;
  for (const auto& [c, q] : logs) {
    if (!q.is_constant()) return false;
  }
  return true;
}

namespace {

void add_log(ClosedForm& h, const Rational& c, const PuiseuxPoly& q) {
  if (c.is_zero()) return;
  for (auto it = h.logs.begin(); it != h.logs.end(); ++it) {
    if (it->second == q) {
      it->first += c;
      if (it->first.is_zero()) h.logs.erase(it);
      return;
    }
  }
  h.logs.emplace_back(c, q);
}

ClosedForm constant_form(int nvars, const Rational& c) {
  return ClosedForm{PuiseuxPoly::constant(nvars, c), {}};
}

std::optional<Rational> as_rational(const Scalar& s) {
  if (s.is_rational()) return s.rational();
  return rational_from_double(s.to_double());
}

std::optional<ClosedForm> convert(const Expr& h, int nvars) {
  switch (h.kind()) {
    case Expr::Kind::kConst:
      return constant_form(nvars, *as_rational(h.value()));
    case Expr::Kind::kVar:
      if (h.index() >= nvars) return std::nullopt;
      return ClosedForm{PuiseuxPoly::variable(nvars, h.index()), {}};
    case Expr::Kind::kAdd: {
      ClosedForm sum = constant_form(nvars, Rational(0));
      for (const Expr& t : h.args()) {
        auto c = convert(t, nvars);
        if (!c) return std::nullopt;
        sum.poly += c->poly;
        for (const auto& [k, q] : c->logs) add_log(sum, k, q);
      }
      return sum;
    }
    case Expr::Kind::kMul: {
      ClosedForm acc = constant_form(nvars, Rational(1));
      for (const Expr& t : h.args()) {
        auto c = convert(t, nvars);
        if (!c) return std::nullopt;
        if (!acc.logs.empty() && !c->logs.empty()) return std::nullopt;
        ClosedForm* with_logs = acc.logs.empty() ? &*c : &acc;
        ClosedForm* plain = acc.logs.empty() ? &acc : &*c;
        if (!with_logs->logs.empty()) {
          if (!plain->poly.is_constant()) return std::nullopt;
          Rational k = plain->poly.constant_term();
          ClosedForm out{with_logs->poly * plain->poly, {}};
          for (const auto& [coef, q] : with_logs->logs) add_log(out, coef * k, q);
          acc = std::move(out);
        } else {
          acc.poly = acc.poly * c->poly;
        }
      }
      return acc;
    }
    case Expr::Kind::kPow: {
      auto base = convert(h.args()[0], nvars);
      if (!base || !base->logs.empty()) return std::nullopt;
      auto k = as_rational(h.exponent());
      const PuiseuxPoly& u = base->poly;
      if (u.is_zero()) {
        if (*k > 0) return constant_form(nvars, Rational(0));
        return std::nullopt;
      }
      if (is_integer(*k) && *k >= 0) {
        return ClosedForm{u.pow(numerator(*k).convert_to<unsigned>()), {}};
      }
      if (!u.is_monomial()) return std::nullopt;
      const auto& [e, c] = *u.terms().begin();
      Rational coef;
      if (is_integer(*k)) {
        coef = lvfi::pow(c, numerator(*k).convert_to<long>());
      } else if (c == 1) {
        coef = 1;
      } else {
        return std::nullopt;
      }
      PuiseuxPoly::Exponents scaled = e;
      for (Rational& x : scaled) x *= *k;
      return ClosedForm{PuiseuxPoly::monomial(scaled, coef), {}};
    }
    case Expr::Kind::kLnAbs: {
      auto arg = convert(h.args()[0], nvars);
      if (!arg || !arg->logs.empty() || arg->poly.is_zero()) return std::nullopt;
      ClosedForm out = constant_form(nvars, Rational(0));
      add_log(out, Rational(1), arg->poly);
      return out;
    }
    case Expr::Kind::kExp:
      return std::nullopt;
  }
  return std::nullopt;
}

Expr poly_to_expr(const PuiseuxPoly& p) {
  if (p.is_zero()) return Expr::constant(Scalar(0));
  std::vector<Expr> terms;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::vector<Expr> factors = {Expr::constant(Scalar(c))};
    for (int i = 0; i < p.nvars(); ++i) {
      if (e[i].is_zero()) continue;
      factors.push_back(e[i] == 1 ? Expr::var(i) : Expr::pow(Expr::var(i), Scalar(e[i])));
    }
    terms.push_back(Expr::mul(std::move(factors)));
  }
  return Expr::add(std::move(terms));
}

PuiseuxPoly inverse_monomial(const PuiseuxPoly& m) {
  const auto& [e, c] = *m.terms().begin();
  PuiseuxPoly::Exponents neg = e;
  for (Rational& x : neg) x = -x;
  return PuiseuxPoly::monomial(neg, Rational(1) / c);
}

}  // namespace

std::optional<ClosedForm> to_closed_form(const Expr& h, int nvars) { return convert(h, nvars); }

std::optional<LaurentPoly> to_laurent_poly(const Expr& h, int nvars) {
  auto c = convert(h, nvars);
  if (!c || !c->logs.empty()) return std::nullopt;
  return to_laurent(c->poly);
}

LaurentPoly parse_laurent(std::string_view text, const ParamSpace& space) {
  Expr e = parse_formula(text, symbolic_resolver(space));
  auto p = to_laurent_poly(e, space.dim() + space.size());
  if (!p) throw FormulaError("not a Laurent polynomial: " + std::string(text));
  return *p;
}

Expr to_expr(const ClosedForm& h) {
  std::vector<Expr> terms;
  if (!h.poly.is_zero()) terms.push_back(poly_to_expr(h.poly));
  // ln|q| = ln|-q|: fix the sign of each argument, then order and merge logs
  // so equal integrals print identically.
  std::map<std::string, std::pair<Rational, Expr>> logs;
  for (const auto& [c, q] : h.logs) {
    PuiseuxPoly arg = q;
    if (!arg.is_zero() && arg.terms().begin()->second < 0) arg = -arg;
    Expr e = poly_to_expr(arg);
    auto [it, fresh] = logs.try_emplace(to_string(e), c, e);
    if (!fresh) it->second.first += c;
  }
  for (const auto& [key, entry] : logs) {
    if (entry.first == 0) continue;
    terms.push_back(Expr::mul({Expr::constant(Scalar(entry.first)), Expr::ln_abs(entry.second)}));
  }
  if (terms.empty()) return Expr::constant(Scalar(0));
  return simplify(Expr::add(std::move(terms)));
}

LaurentPoly rate_polynomial(const ExactSystem& s, int i) {
  const int n = s.dim();
  LaurentPoly rate = LaurentPoly::constant(n, s.b(i));
  for (int j = 0; j < n; ++j) rate += s.A(i, j) * LaurentPoly::variable(n, j);
  return rate;
}

std::vector<LaurentPoly> field_polynomials(const ExactSystem& s) {
  const int n = s.dim();
  std::vector<LaurentPoly> f;
  for (int i = 0; i < n; ++i) {
    f.push_back(LaurentPoly::variable(n, i) * rate_polynomial(s, i) +
                LaurentPoly::constant(n, s.e(i)));
  }
  return f;
}

bool lie_vanishes_exactly(const ClosedForm& h, const ExactSystem& s) {
  const int n = s.dim();
  if (h.nvars() != n) throw std::invalid_argument("dimension mismatch");
  std::vector<PuiseuxPoly> f;
  for (const LaurentPoly& fi : field_polynomials(s)) f.push_back(to_puiseux(fi));
  auto lie = [&](const PuiseuxPoly& p) {
    PuiseuxPoly out(n);
    for (int i = 0; i < n; ++i) out += f[i] * p.derivative(i);
    return out;
  };
  // Multiply through by every log argument that is not a monomial.
  std::vector<std::size_t> dense;
  for (std::size_t k = 0; k < h.logs.size(); ++k) {
    if (!h.logs[k].second.is_monomial()) dense.push_back(k);
  }
  PuiseuxPoly denom = PuiseuxPoly::constant(n, Rational(1));
  for (std::size_t k : dense) denom *= h.logs[k].second;

  PuiseuxPoly total = denom * lie(h.poly);
  for (std::size_t k = 0; k < h.logs.size(); ++k) {
    const auto& [c, q] = h.logs[k];
    if (q.is_constant()) continue;
    PuiseuxPoly term = c * lie(q);
    if (q.is_monomial()) {
      total += denom * term * inverse_monomial(q);
    } else {
      for (std::size_t j : dense) {
        if (j != k) term *= h.logs[j].second;
      }
      total += term;
    }
  }
  return total.is_zero();
}

std::optional<std::vector<PuiseuxPoly>> polynomial_gradient(const ClosedForm& h) {
  const int n = h.nvars();
  std::vector<PuiseuxPoly> g;
  for (int i = 0; i < n; ++i) g.push_back(h.poly.derivative(i));
  for (const auto& [c, q] : h.logs) {
    if (q.is_constant()) continue;
    if (!q.is_monomial()) return std::nullopt;
    PuiseuxPoly inv = inverse_monomial(q);
    for (int i = 0; i < n; ++i) g[i] += c * (q.derivative(i) * inv);
  }
  return g;
}

std::optional<ClosedForm> integrate_gradient(const std::vector<PuiseuxPoly>& grad) {
  if (grad.empty()) return std::nullopt;
  const int n = grad[0].nvars();
  if (static_cast<int>(grad.size()) != n) throw std::invalid_argument("gradient size mismatch");
  std::map<PuiseuxPoly::Exponents, Rational> potential;
  ClosedForm h{PuiseuxPoly(n), {}};
  for (int i = 0; i < n; ++i) {
    for (const auto& [p, c] : grad[i].terms()) {
      PuiseuxPoly::Exponents q = p;
      q[i] += 1;
      if (!q[i].is_zero()) {
        potential.try_emplace(q, c / q[i]);
        continue;
      }
      bool all_zero = true;
      for (const Rational& x : q) all_zero = all_zero && x.is_zero();
      if (all_zero) add_log(h, c, PuiseuxPoly::variable(n, i));
      // Otherwise the term is accounted for by another component.
    }
  }
  for (const auto& [q, c] : potential) h.poly.add_term(q, c);
  auto check = polynomial_gradient(h);
  if (!check) return std::nullopt;
  for (int i = 0; i < n; ++i) {
    if ((*check)[i] != grad[i]) return std::nullopt;
  }
  return h;
}

}  // namespace lvfi
