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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lvfi/formula.hpp"
#include "lvfi/linalg.hpp"
#include "lvfi/model.hpp"
#include "lvfi/polynomial.hpp"

namespace lvfi {

// Shape of the skew matrix T in grad H = T f. kPlanar is the 2D matrix
// [[0,-R],[R,0]]; kT1 has constant entries (alpha, beta, gamma) and kT2 the
// entries (alpha x3, beta x2, gamma x1), both scaled by R.
enum class Ansatz { kPlanar, kT1, kT2 };

std::string to_string(Ansatz a);
std::optional<Ansatz> parse_ansatz(std::string_view text);

// R = x^(l-1) * exp(c.x) * prod_k P_k^m_k together with the matrix shape.
struct IntegratingFactor {
  Ansatz ansatz = Ansatz::kPlanar;
  std::array<Rational, 3> abg{};
  std::vector<Rational> l;
  std::vector<Rational> c;                               // empty means zero
  std::vector<std::pair<LaurentPoly, Rational>> polys;  // P_k, m_k

  bool is_monomial() const;
};

// Symbolic variant: every entry is a polynomial in the coordinates followed
// by any number of extra indeterminates.
struct PolySystem {
  int dim = 0;
  std::vector<LaurentPoly> b, e;
  std::vector<std::vector<LaurentPoly>> a;
};
struct PolyFactor {
  std::array<LaurentPoly, 3> abg;
  std::vector<LaurentPoly> l;
  std::vector<LaurentPoly> c;  // empty means zero
  std::vector<std::pair<LaurentPoly, Rational>> polys;
};

PolySystem lift_system(const ExactSystem& s, int nvars);

// Components of curl(T f) divided by R and multiplied by prod_k P_k. In 2D the
// single component is div(R f)/R times prod_k P_k. The factor is an
// integrating factor iff every component is the zero polynomial.
std::vector<LaurentPoly> curl_residual(const PolySystem& s, Ansatz ansatz, const PolyFactor& r);

std::vector<LaurentPoly> residual(const ExactSystem& s, const IntegratingFactor& r);
bool is_integrating_factor(const ExactSystem& s, const IntegratingFactor& r);

// 2D separable factor exp(alpha x1/a12 - alpha x2/a21) x1^(beta/a12)
// x2^(gamma/a21). Throws std::domain_error if a12 or a21 vanishes.
LaurentPoly residual_2d(const ExactSystem& s, const Rational& alpha, const Rational& beta,
                        const Rational& gamma);

// Monomial factor R = x^(l-1) with T1 or T2.
std::vector<LaurentPoly> residual_3d(const ExactSystem& s, Ansatz ansatz,
                                     const std::array<Rational, 3>& abg,
                                     const std::vector<Rational>& l);

// T f for a monomial factor, as exact sums of rational powers.
std::optional<std::vector<PuiseuxPoly>> gradient_field(const ExactSystem& s,
                                                       const IntegratingFactor& r);

// Solves the residual equations, which are affine in the exponents, for the
// exponents not fixed. Fixed entries are copied to the result.
struct ExponentSolve {
  LinearSolve::Status status = LinearSolve::Status::kInfeasible;
  std::vector<Rational> l;
  int free_count = 0;
};
ExponentSolve solve_exponents(const ExactSystem& s, const IntegratingFactor& shape,
                              const std::vector<std::optional<Rational>>& fixed);

// Coefficient equations of the residual for a fully symbolic system, over
// the parameters of ParamSpace(dim). Polynomials live in space.size()
// variables. For kPlanar the factor is the separable exponential-power form
// in (alpha, beta, gamma); for kT1/kT2 it is x^(l-1) with symbolic l unless
// `fixed_l` is given.
struct DerivedCondition {
  int component = 0;
  std::vector<int> monomial;  // coordinate exponents of the coefficient
  LaurentPoly equation;
};
std::vector<DerivedCondition> derive_conditions(Ansatz ansatz, int dim,
                                                const std::optional<std::vector<Rational>>& fixed_l);

// Drops the coordinate slots of a polynomial that does not involve them.
LaurentPoly parameters_only(const LaurentPoly& p, int dim);

// p == k q for some nonzero rational k.
bool proportional(const LaurentPoly& p, const LaurentPoly& q);

}  // namespace lvfi
