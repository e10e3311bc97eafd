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

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "lvfi/expr.hpp"
#include "lvfi/formula.hpp"
#include "lvfi/model.hpp"
#include "lvfi/polynomial.hpp"

namespace lvfi {

// P + sum_k c_k ln|Q_k| with P, Q_k sums of rational-power monomials. This is
// the shape of every integral in the catalog and it admits exact checks.
struct ClosedForm {
  PuiseuxPoly poly;
  std::vector<std::pair<Rational, PuiseuxPoly>> logs;

  int nvars() const { return poly.nvars(); }
  bool is_constant() const;
};

// Exact conversion; nullopt when h leaves the closed-form family (exp,
// products of logs, non-integer powers of sums, float constants are lifted).
std::optional<ClosedForm> to_closed_form(const Expr& h, int nvars);

// Integer-exponent polynomial without logs, if h is one.
std::optional<LaurentPoly> to_laurent_poly(const Expr& h, int nvars);

// Parses a formula over the coordinates and the named parameters of `space`.
// The result lives in dim + space.size() variables. Throws FormulaError.
LaurentPoly parse_laurent(std::string_view text, const ParamSpace& space);

Expr to_expr(const ClosedForm& h);

// The coordinate field components as polynomials.
std::vector<LaurentPoly> field_polynomials(const ExactSystem& s);

// b_i + sum_j a_ij x_j.
LaurentPoly rate_polynomial(const ExactSystem& s, int i);

// f . grad h == 0 as an identity, decided in exact arithmetic.
bool lie_vanishes_exactly(const ClosedForm& h, const ExactSystem& s);

// Gradient when every log argument is a monomial.
std::optional<std::vector<PuiseuxPoly>> polynomial_gradient(const ClosedForm& h);

// A potential for `grad`, or nullopt if it is not a gradient field within
// the closed-form family.
std::optional<ClosedForm> integrate_gradient(const std::vector<PuiseuxPoly>& grad);

}  // namespace lvfi
