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

#include "lvfi/catalog3d.hpp"

#include <stdexcept>

#include "lvfi/closed_form.hpp"
#include "lvfi/formula.hpp"
#include "lvfi/oracle.hpp"

namespace lvfi {

TermTable term_table(const std::array<Rational, 3>& abg, const ExactSystem& s) {
  if (s.dim() != 3) throw std::invalid_argument("term table needs a three-dimensional system");
  const Rational& al = abg[0];
  const Rational& be = abg[1];
  const Rational& ga = abg[2];
  TermTable t;
  t.B = {s.b(0) * al - s.b(2) * ga, s.b(1) * al + s.b(2) * be, s.b(0) * be + s.b(1) * ga};
  t.A = RMatrix(3, 3);
  for (int i = 0; i < 3; ++i) {
    t.A(0, i) = s.A(0, i) * al - s.A(2, i) * ga;
    t.A(1, i) = s.A(1, i) * al + s.A(2, i) * be;
    t.A(2, i) = s.A(0, i) * be + s.A(1, i) * ga;
  }
  return t;
}

std::vector<std::array<Rational, 3>> solve_abg(const std::vector<std::string>& constraints,
                                               const ExactSystem& s) {
  if (s.dim() != 3) throw std::invalid_argument("solve_abg needs a three-dimensional system");
  std::array<TermTable, 3> unit;
  for (int k = 0; k < 3; ++k) {
    std::array<Rational, 3> e{};
    e[k] = 1;
    unit[k] = term_table(e, s);
  }
  std::vector<std::vector<Rational>> rows;
  for (const std::string& c : constraints) {
    std::vector<Rational> row(3, Rational(0));
    if (c == "alpha" || c == "beta" || c == "gamma") {
      row[c == "alpha" ? 0 : c == "beta" ? 1 : 2] = 1;
    } else if (c.size() == 2 && c[0] == 'B' && c[1] >= '1' && c[1] <= '3') {
      for (int k = 0; k < 3; ++k) row[k] = unit[k].B[c[1] - '1'];
    } else if (c.size() == 3 && c[0] == 'A' && c[1] >= '1' && c[1] <= '3' && c[2] >= '1' &&
               c[2] <= '3') {
      for (int k = 0; k < 3; ++k) row[k] = unit[k].A(c[1] - '1', c[2] - '1');
    } else {
      throw InputError("unknown term-table entry '" + c + "'");
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::array<Rational, 3>> out;
  if (rows.empty()) {
    for (int k = 0; k < 3; ++k) {
      std::array<Rational, 3> e{};
      e[k] = 1;
      out.push_back(e);
    }
    return out;
  }
  for (const RVector& v : nullspace(make_matrix(rows))) out.push_back({v(0), v(1), v(2)});
  return out;
}

namespace {

Rule base(std::string id, std::string description, Ansatz ansatz, std::vector<int> e_pattern) {
  Rule r;
  r.id = std::move(id);
  r.description = std::move(description);
  r.dim = 3;
  r.ansatz = ansatz;
  r.e_pattern = std::move(e_pattern);
  return r;
}

// 2x2 minors stating that the two coefficient lists are proportional.
std::vector<std::string> proportional_rows(const std::vector<std::string>& u,
                                           const std::vector<std::string>& v) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      out.push_back(u[i] + "*" + v[j] + "-" + u[j] + "*" + v[i]);
    }
  }
  return out;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const std::vector<std::string> kRow1 = {"b1", "a11", "a12", "a13"};
const std::vector<std::string> kRow2 = {"b2", "a21", "a22", "a23"};
const std::vector<std::string> kRow3 = {"b3", "a31", "a32", "a33"};
const std::vector<std::string> kRow1Short = {"b1", "a11", "a12"};
const std::vector<std::string> kRow2Short = {"b2", "a21", "a22"};

std::optional<Rational> unique_solution(const std::vector<std::vector<Rational>>& m,
                                        const std::vector<Rational>& r, std::vector<Rational>* x) {
  LinearSolve sol = solve_constrained(make_matrix(m), make_vector(r));
  if (sol.status != LinearSolve::Status::kUnique) return std::nullopt;
  x->clear();
  for (Eigen::Index i = 0; i < sol.solution.size(); ++i) x->push_back(sol.solution(i));
  return Rational(0);
}

// l3 from the rate rows 1 and 3, then (alpha, beta, gamma) = (1, l3, -l3).
std::vector<AbgCandidate> third_exponent_abg(const ExactSystem& s) {
  std::vector<Rational> l3;
  if (!unique_solution({{s.b(2)}, {s.A(2, 0)}, {s.A(2, 1)}, {s.A(2, 2)}},
                       {-s.b(0), -s.A(0, 0), -s.A(0, 1), -s.A(0, 2)}, &l3)) {
    return {};
  }
  return {AbgCandidate{{Rational(1), l3[0], -l3[0]}, {{"l3", l3[0]}}}};
}

// (l2, l3) from the four-equation system, then (alpha, beta, gamma) = (l2, l3, 0).
std::vector<AbgCandidate> paired_exponent_abg(const ExactSystem& s) {
  std::vector<Rational> l;
  if (!unique_solution({{s.b(1), s.b(2)},
                        {s.A(1, 0), s.A(2, 0)},
                        {s.A(1, 1), s.A(2, 1)},
                        {s.A(1, 2), s.A(2, 2)}},
                       {-s.b(0), -2 * s.A(0, 0), Rational(0), Rational(0)}, &l)) {
    return {};
  }
  return {AbgCandidate{{l[0], l[1], Rational(0)}, {{"l2", l[0]}, {"l3", l[1]}}}};
}

FactorChoice rate_factor(Ansatz ansatz, std::array<Rational, 3> abg, std::vector<Rational> l,
                         const ExactSystem& s, int rate_index) {
  FactorChoice out;
  out.factor.ansatz = ansatz;
  out.factor.abg = abg;
  out.factor.l = std::move(l);
  out.factor.polys.emplace_back(rate_polynomial(s, rate_index), Rational(-1));
  return out;
}

// Logarithmic pair in x2, x3: R = 1/(x1 x2 x3 g3) with the matrix acting on (x2, x3).
std::optional<FactorChoice> third_rate_factor(const ExactSystem& s,
                                              const std::array<Rational, 3>&) {
  return rate_factor(Ansatz::kT2, {Rational(0), Rational(0), Rational(1)},
                     {Rational(0), Rational(0), Rational(0)}, s, 2);
}

std::optional<FactorChoice> second_rate_factor(const ExactSystem& s,
                                               const std::array<Rational, 3>& abg) {
  return rate_factor(Ansatz::kT1, {Rational(1), Rational(0), Rational(0)},
                     {abg[1], abg[2], Rational(1)}, s, 1);
}

std::optional<FactorChoice> chained_rate_factor(const ExactSystem& s,
                                                const std::array<Rational, 3>& abg) {
  Rational k1 = abg[1];
  Rational k2 = abg[2] + abg[0];
  return rate_factor(Ansatz::kT2, {Rational(0), -k1, -k2}, {k1, k2, k1}, s, 2);
}

// Draws l with l1 - l2 + l3 = +-1 and a random system in the nullspace of the
// curl conditions, which are linear in (b, A) once l and the matrix are fixed.
std::optional<ExactSystem> sample_equal_abg(std::mt19937_64& rng) {
  const int n = 3;
  const int nvars = n + n + n * n;
  PolySystem ps;
  ps.dim = n;
  for (int i = 0; i < n; ++i) {
    ps.b.push_back(LaurentPoly::variable(nvars, n + i));
    ps.e.push_back(LaurentPoly(nvars));
    std::vector<LaurentPoly> row;
    for (int j = 0; j < n; ++j) row.push_back(LaurentPoly::variable(nvars, 2 * n + n * i + j));
    ps.a.push_back(std::move(row));
  }
  std::bernoulli_distribution sign(0.5);
  Rational l1 = random_rational(rng);
  Rational l2 = random_rational(rng);
  Rational l3 = Rational(sign(rng) ? 1 : -1) - l1 + l2;
  PolyFactor r;
  for (int k = 0; k < 3; ++k) r.abg[k] = LaurentPoly::constant(nvars, Rational(1));
  for (const Rational& li : {l1, l2, l3}) r.l.push_back(LaurentPoly::constant(nvars, li));

  std::vector<std::vector<Rational>> rows;
  for (const LaurentPoly& comp : curl_residual(ps, Ansatz::kT2, r)) {
    for (const auto& [x, coef] : comp.collect(n)) {
      std::vector<Rational> row(static_cast<std::size_t>(n + n * n), Rational(0));
      for (const auto& [e, c] : coef.terms()) {
        for (int k = 0; k < n + n * n; ++k) {
          if (e[k] == 1) row[k] += c;
        }
      }
      rows.push_back(std::move(row));
    }
  }
  std::vector<RVector> basis = nullspace(make_matrix(rows));
  if (basis.empty()) return std::nullopt;
  RVector v = RVector::Zero(n + n * n);
  for (const RVector& w : basis) v += random_rational(rng) * w;
  ExactSystem s(n);
  for (int i = 0; i < n; ++i) {
    s.b(i) = v(i);
    for (int j = 0; j < n; ++j) s.A(i, j) = v(n + n * i + j);
  }
  return s;
}

std::vector<Rule> build() {
  const std::vector<int> all_e = {1, 1, 1};
  const std::vector<int> two_e = {1, 1, 0};
  const std::vector<int> one_e = {1, 0, 0};
  const std::vector<int> no_e = {0, 0, 0};
  const std::optional<Rational> one = Rational(1);
  const std::optional<Rational> zero = Rational(0);
  std::vector<Rule> rules;

  {
    Rule r = base("R3D-N1", "all constant terms; planar block integral", Ansatz::kT1, all_e);
    r.conditions = {"b1+b2", "2*a11+a21", "2*a22+a12", "a13", "a23"};
    r.fixed_abg = std::array<Rational, 3>{Rational(1), Rational(0), Rational(0)};
    r.fixed_l = {one, one, one};
    r.printed_h = "b1*x1*x2+a11*x1^2*x2-a22*x1*x2^2+e1*x2-e2*x1";
    r.sampler_deps = {"b2", "a21", "a12", "a13", "a23"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-N2", "all constant terms; two-generator matrix", Ansatz::kT1, all_e);
    r.conditions = {"b1+b2", "b1+b3", "2*a11+a21", "2*a11+a31", "2*a22+a12", "2*a33+a13",
                    "a12*a13+a12*a23+a13*a32"};
    r.abg_constraints = {"a13*alpha-a12*beta", "a23*alpha+(a12+a32)*beta",
                         "(a13+a23)*alpha+a32*beta", "gamma"};
    r.fixed_l = {one, one, one};
    r.post_guards = {"alpha", "beta"};
    r.printed_h =
        "-2*b1*a33*x1*x3-2*b1*a22*x1*x2-2*a11*a33*x1^2*x3+2*a11*a22*x1^2*x2+2*a33^2*x1*x3^2"
        "+2*a22^2*x1*x2^2+4*a22*a33*x1*x2*x3+2*(e3*a33+e2*a22)*x1-2*e1*a33*x3+2*e1*a22*x2";
    r.sampler_deps = {"b2", "b3", "a21", "a31", "a12", "a13", "a23"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-N3", "all constant terms; full matrix, no linear rates", Ansatz::kT1,
                  all_e);
    r.conditions = {"b1", "b2", "b3", "a12+2*a22", "a13+2*a33", "a21+2*a11",
                    "a23+2*a33", "a31+2*a11", "a32+2*a22"};
    r.abg_constraints = {"-a13*alpha+a12*beta+(a21+a31)*gamma",
                         "a23*alpha+(a12+a32)*beta+a21*gamma",
                         "(a13+a23)*alpha+a32*beta-a31*gamma"};
    r.fixed_l = {one, one, one};
    r.post_guards = {"alpha", "beta", "gamma"};
    r.printed_h =
        "a11^2*a22*x1^2*x2-a11^2*a33*x1^2*x3-a11*a22^2*x1*x2^2+a11*a33^2*x1*x3^2"
        "+a22^2*a33*x2^2*x3-a22*a33^2*x2*x3^2+(-a11*a22*e2+a11*a33*e3)*x1"
        "+(a11*a22*e1-a22*a33*e3)*x2+(a22*a33*e2-a11*a33*e1)*x3";
    r.sampler_deps = {"b1", "b2", "b3", "a12", "a13", "a21", "a23", "a31", "a32"};
    rules.push_back(std::move(r));
  }

  {
    Rule r = base("R3D-P1", "two constant terms; planar block integral", Ansatz::kT2, two_e);
    r.conditions = {"b1+b2", "2*a11+a21", "2*a22+a12", "a13", "a23"};
    r.abg_constraints = {"beta", "gamma"};
    r.fixed_l = {one, one};
    r.printed_h = "b1*x1*x2+a11*x1^2*x2-a22*x1*x2^2+e1*x2-e2*x1";
    r.sampler_deps = {"b2", "a21", "a12", "a13", "a23"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-P2", "two constant terms; quadratic in the third coordinate",
                  Ansatz::kT2, two_e);
    r.conditions = {"b1+b3", "b2+b3", "a21+a31", "a11-a21",
                    "a22+a32", "a12+a32", "a13+a23+2*a33"};
    r.guards = {"a13-a23"};
    r.abg_constraints = {"alpha-beta", "alpha+gamma"};
    r.fixed_l = {one, one};
    r.printed_h = "(a13-a23)*x1*x2*x3^2/2+e1*x2*x3-e2*x1*x3";
    r.sampler_deps = {"b1", "b2", "a21", "a31", "a32", "a22", "a33"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-P3", "two constant terms; equal first two rate rows", Ansatz::kT2,
                  two_e);
    r.conditions = {"b1-b2", "a11-a21", "a12-a22", "a13-a23",
                    "b3*a11-b1*a31", "b3*a12-b1*a32", "b3*a13-b1*a33"};
    r.guards = {"b3^2+a31^2+a32^2+a33^2"};
    r.abg_hook = third_exponent_abg;
    r.fixed_l = {one, one};
    r.printed_l = {{"l3", "b1/b3"}};
    r.printed_h = "(e1*x2-e2*x1)*x3^l3";
    r.sampler_deps = {"b2", "a31", "a32", "a33", "a21", "a22", "a23"};
    rules.push_back(std::move(r));
  }

  {
    Rule r = base("R3D-S1", "one constant term; first rate row zero", Ansatz::kT2, one_e);
    r.conditions = {"b1", "a11", "a12", "a13", "a22*a33-a23*a32"};
    r.abg_constraints = {"A22", "A23", "gamma"};
    r.fixed_l = {one};
    r.printed_h = "-B2*x1-A21*x1^2/2+alpha*e1*ln(x2)+beta*e1*ln(x3)";
    r.sampler_deps = {"b1", "a11", "a12", "a13", "a32"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-S2", "one constant term; logarithm of the second coordinate",
                  Ansatz::kT2, one_e);
    r.conditions = {"b2", "a21", "a22", "b1+b3", "a11+a31", "a12+a32", "a13+a33"};
    r.guards = {"a23"};
    r.abg_constraints = {"beta", "alpha+gamma"};
    r.fixed_l = {one};
    r.printed_h = "-a23*x1*x3+e1*ln(x2)";
    r.sampler_deps = {"b2", "a21", "a22", "b3", "a31", "a32", "a33"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-S3", "one constant term; proportional second and third rate rows",
                  Ansatz::kT2, one_e);
    r.conditions = proportional_rows(kRow2, kRow3);
    r.guards = {"b3^2+a31^2+a32^2+a33^2"};
    r.abg_constraints = {"B2", "A21", "A22", "A23"};
    r.post_guards = {"alpha^2+beta^2"};
    r.factor_hook = third_rate_factor;
    r.printed_h = "beta*ln(x3)+alpha*ln(x2)";
    r.sampler_deps = {"a21", "a22", "a23"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-S4", "one constant term; mixed quadratic and logarithms", Ansatz::kT2,
                  one_e);
    r.conditions = concat({"b1+b3", "a11+a31", "a12+a32", "a13+a33"},
                          proportional_rows(kRow1Short, kRow2Short));
    r.abg_constraints = {"B3", "A31", "A32", "alpha+gamma"};
    r.fixed_l = {one};
    r.post_guards = {"A33"};
    r.printed_h = "A33*x1*x3+beta*e1*ln(x3)-gamma*e1*ln(x2)";
    r.sampler_deps = {"a11", "a12", "b3", "a31", "a32", "a33"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-S5", "one constant term; linear plus logarithms", Ansatz::kT2, one_e);
    r.conditions = {"b1+b2", "b1+b3", "a11+a21", "a11+a31", "a12+a22", "a13+a33"};
    r.guards = {"a12+a32", "a13+a23"};
    r.abg_constraints = {"alpha+beta", "gamma-beta"};
    r.fixed_l = {one};
    r.printed_h = "(a13+a23)*x3-(a12+a32)*x2+e1*ln(x3)-e1*ln(x2)";
    r.sampler_deps = {"b2", "b3", "a21", "a31", "a22", "a33"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-S6", "one constant term; power of the second coordinate", Ansatz::kT2,
                  one_e);
    r.conditions = {"b2", "a21", "a22", "b1+b3", "a11+a31", "a12+a32"};
    r.guards = {"a23", "a13+a33"};
    r.abg_constraints = {"beta", "alpha+gamma"};
    r.fixed_l = {one};
    r.printed_l = {{"l2", "-(a13+a33)/a23"}};
    r.printed_h = "-a23*x1*x2^l2*x3+e1*x2^l2/l2";
    r.sampler_deps = {"b2", "a21", "a22", "b3", "a31", "a32"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-S7", "one constant term; exponents from a four-equation system",
                  Ansatz::kT2, one_e);
    r.conditions = {"a12", "a13",
                    "a22*(-b1*a31+2*b3*a11)+a32*(-2*b2*a11+b1*a21)",
                    "a23*(-b1*a31+2*b3*a11)+a33*(-2*b2*a11+b1*a21)"};
    r.abg_hook = paired_exponent_abg;
    r.fixed_l = {one};
    r.printed_h = "(b1+a11*x1)*x1*x2^l2*x3^l3+e1*x2^l2*x3^l3";
    r.sampler_deps = {"a12", "a13", "a32", "a33"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-S8", "one constant term; powers of the second and third coordinates",
                  Ansatz::kT2, one_e);
    r.conditions = concat({"b1+b3", "a11+a31", "a12+a32"},
                          proportional_rows(kRow1Short, kRow2Short));
    r.guards = {"a13+a33"};
    r.abg_constraints = {"B3", "A31", "A32", "alpha+gamma"};
    r.fixed_l = {one};
    r.post_guards = {"A33", "A23"};
    r.printed_l = {{"l2", "gamma*(a13+a33)/A23"}, {"l3", "-beta*(a13+a33)/A23"}};
    r.printed_h = "(a13+a33)*x1*x2^l2*x3^(l3+1)+e1*x2^l2*x3^l3";
    r.sampler_deps = {"a11", "a12", "b3", "a31", "a32"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-S9", "one constant term; opposite exponents", Ansatz::kT2, one_e);
    r.conditions = {"b1+b3", "b2-b3", "a11+a31", "a21-a31",
                    "(a13+a33)*(a22-a32)-(a12+a22)*(a23-a33)"};
    r.guards = {"a12+a22", "a22-a32", "a13+a33", "a23-a33"};
    r.abg_constraints = {"alpha+beta", "gamma-beta"};
    r.fixed_l = {one};
    r.printed_l = {{"l2", "-(a12+a22)/(a22-a32)"}, {"l3", "(a12+a22)/(a22-a32)"}};
    r.printed_h =
        "((a12+a22)*x2/l3+(a13+a23)*x3/(l3+1))*x1*x2^l2*x3^l3+e1*x2^l2*x3^l3/l3";
    r.sampler_deps = {"b3", "b2", "a31", "a21", "a13"};
    rules.push_back(std::move(r));
  }

  {
    Rule r = base("R3D-Z1", "no constant terms; logarithms, first quadratic row zero",
                  Ansatz::kT2, no_e);
    r.conditions = {"a11", "a12", "a13", "a22*a33-a32*a23"};
    r.guards = {"b1"};
    r.abg_constraints = {"A22", "A23", "gamma"};
    r.printed_h =
        "alpha*(b1*ln(x2)-b2*ln(x1)-a21*x1)+beta*(b1*ln(x3)-b3*ln(x1)-a31*x1)";
    r.sampler_deps = {"a11", "a12", "a13", "a32"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-Z2", "no constant terms; logarithms and a reciprocal", Ansatz::kT2,
                  no_e);
    r.conditions = {"b1", "a12", "a13", "a22*a33-a32*a23"};
    r.guards = {"a11"};
    r.abg_constraints = {"A22", "A23", "gamma"};
    r.printed_h =
        "alpha*(b2/x1-a21*ln(x1)+a11*ln(x2))+beta*(b3/x1-a31*ln(x1)+a11*ln(x3))";
    r.sampler_deps = {"b1", "a12", "a13", "a32"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-Z3", "no constant terms; logarithms and a ratio", Ansatz::kT2, no_e);
    r.conditions = {"b1-b2", "a12-a22", "a13-a23", "b1*a33-b3*a13"};
    r.abg_constraints = {"B1", "A13", "beta+gamma"};
    r.post_guards = {"A11^2+A31^2", "A22"};
    r.printed_h = "A31*ln(x3)+A11*ln(x2)-A21*ln(x1)+A22*x2/x1";
    r.sampler_deps = {"b2", "a22", "a23", "a33"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-Z4", "no constant terms; logarithms and two ratios", Ansatz::kT2, no_e);
    r.conditions = {"b1-b3", "b1-b2", "a12-a22", "a13-a33"};
    r.guards = {"(a11-a31)^2+(a11-a21)^2", "a22-a32", "a23-a33"};
    r.abg_constraints = {"alpha+beta", "gamma-alpha"};
    r.printed_h =
        "-(a11-a21)*ln(x3)+(a11-a31)*ln(x2)-(a21-a31)*ln(x1)+(a22-a32)*x2/x1"
        "-(a13-a23)*x3/x1";
    r.sampler_deps = {"b3", "b2", "a22", "a33"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-Z5", "no constant terms; proportional first and second rate rows",
                  Ansatz::kT2, no_e);
    r.conditions = proportional_rows(kRow1, kRow2);
    r.guards = {"b2^2+a21^2+a22^2+a23^2"};
    r.abg_constraints = {"B3", "A31", "A32", "A33"};
    r.post_guards = {"beta"};
    r.factor_hook = second_rate_factor;
    r.printed_h = "x1^beta*x2^gamma";
    r.sampler_deps = {"a11", "a12", "a13"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-Z6", "no constant terms; all rate rows proportional", Ansatz::kT2,
                  no_e);
    r.conditions = concat(proportional_rows(kRow1, kRow2), proportional_rows(kRow2, kRow3));
    r.guards = {"b3^2+a31^2+a32^2+a33^2"};
    r.abg_constraints = {"B2", "B3", "A21", "A22", "A23", "A31", "A32", "A33"};
    r.factor_hook = chained_rate_factor;
    r.printed_h = "x1^beta*x2^(gamma+alpha)*x3^beta";
    r.sampler_deps = {"a21", "a22", "a23", "a11", "a12", "a13"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-Z7a", "no constant terms; monomial times a linear form", Ansatz::kT2,
                  no_e);
    r.conditions = concat({"b2-b3", "a21-a31"}, proportional_rows(kRow1Short, kRow2Short));
    r.abg_constraints = {"B3", "A31", "A32", "alpha+beta"};
    r.fixed_l = {std::nullopt, std::nullopt, zero};
    r.post_guards = {"A33", "A13", "A23", "A12"};
    r.printed_l = {{"l1", "-beta*(-a23+a33)/A33"}, {"l2", "-A13/A33"}};
    r.printed_h = "x1^l1*x2^l2*(A12*x2/(l2+1)+A33*x3)";
    r.sampler_deps = {"b3", "a31", "a11", "a12"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-Z7b", "no constant terms; monomial times an affine form", Ansatz::kT2,
                  no_e);
    r.conditions = concat({"a31", "a32"}, proportional_rows(kRow1Short, kRow2Short));
    r.guards = {"b3", "a33"};
    r.abg_constraints = {"B3", "A31", "A32", "alpha"};
    r.post_guards = {"A33"};
    r.printed_l = {{"l1", "-a33*beta/A33"}, {"l2", "-(a33*gamma)/A33"}};
    r.printed_h = "x1^l1*x2^l2*(-b3*beta/l1+A33*x3)";
    r.sampler_deps = {"a31", "a32", "a11", "a12"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-Z7c", "no constant terms; equal first two rate rows, linear form",
                  Ansatz::kT2, no_e);
    r.conditions = {"b1-b2", "b1-b3", "a11-a21", "a12-a22"};
    r.guards = {"a11-a31", "a12-a32", "a13-a33", "a23-a33", "a13-a23"};
    r.abg_constraints = {"alpha+beta", "gamma-alpha"};
    r.fixed_l = {std::nullopt, std::nullopt, zero};
    r.printed_l = {{"l1", "(a23-a33)/(a13-a23)"}, {"l2", "(a33-a13)/(a13-a23)"}};
    r.printed_h = "x1^l1*x2^l2*((a21-a31)*x1/(l1+1)+(a22-a32)*x2/l2+(a13-a23)*x3)";
    r.sampler_deps = {"b2", "b3", "a21", "a22"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-Z7d", "no constant terms; opposite first two rate rows, affine form",
                  Ansatz::kT2, no_e);
    r.conditions = {"b1+b2", "a11+a21", "a12+a22", "a12-a32", "(b1-b3)*a23-(b2+b3)*a13"};
    r.guards = {"a13+a23"};
    r.abg_constraints = {"alpha-beta", "gamma-alpha"};
    r.fixed_l = {std::nullopt, std::nullopt, zero};
    r.printed_l = {{"l1", "-(a23+a33)/(a13+a23)"},
                   {"l2", "-(a33-a13)*(a13+a23)"},
                   {"l2", "-(a33-a13)/(a13+a23)"}};
    r.printed_h = "x1^l1*x2^l2*(-(b2+b3)/l1-(a21+a31)*x1/l2+(a13+a23)*x3)";
    r.sampler_deps = {"b2", "a21", "a22", "a32", "b3"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-Z8a", "no constant terms; monomial times the first rate's linear part",
                  Ansatz::kT2, no_e);
    r.conditions = {"a12", "a13", "a22*a33-a32*a23"};
    r.guards = {"b1^2+a11^2"};
    r.abg_constraints = {"A22", "A23", "gamma"};
    r.post_guards = {"B2", "a11*B2-b1*A21"};
    r.printed_l = {{"l1", "-(a11*B2)/(a11*B2-b1*A21)"},
                   {"l2", "-(b1*alpha)/B2"},
                   {"l3", "(b1*beta)/B2"}};
    r.printed_h = "x1^l1*x2^l2*x3^l3*(b1+a11*x1)";
    r.sampler_deps = {"a12", "a13", "a32"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-Z8b", "no constant terms; monomial times a form in x2, x3", Ansatz::kT2,
                  no_e);
    r.conditions = {"b1", "a11", "b2-b3", "a21-a31"};
    r.guards = {"a13", "a23", "a22-a32", "a23-a33"};
    r.abg_constraints = {"alpha+beta", "gamma"};
    r.post_conditions = {"l2+l3+1"};
    r.printed_l = {
        {"l1", "(a22-a32)*(a23-a33)/(-a12*(a23-a33)+a13*(a22-a32))"},
        {"l2", "a12*(a23-a33)/(-a12*(a23-a33)+a13*(a22-a32))"},
        {"l3", "a12*(a23-a33)/(-a12*(a23-a33)+a13*(a22-a32))"}};
    r.printed_h = "x1^l1*x2^l2*x3^l3*(a12*x2/l3-a13*x3/l2)";
    r.sampler_deps = {"b1", "a11", "b2", "a21"};
    rules.push_back(std::move(r));
  }
  {
    Rule r = base("R3D-Z8c", "no constant terms; equal matrix weights", Ansatz::kT2, no_e);
    r.fixed_abg = std::array<Rational, 3>{Rational(1), Rational(1), Rational(1)};
    r.informational = {"B1*A22*(A21-A11)+B2*A11*(A12-A22)",
                       "A13*A22*(A21-A11)+A23*A11*(A12-A22)",
                       "B3*A23*(A21-A31)+B2*A31*(A33-A23)",
                       "A32*A23*(A21-A31)+A22*A31*(A33-A23)"};
    r.printed_l = {{"l1", "A22*(A21-A11)/(A11*A22-A21*A12)"},
                   {"l2", "A11*(A12-A22)/(A11*A22-A21*A12)"},
                   {"l3", "A31*(A33-A23)/(A31*A23-A21*A33)"}};
    r.printed_h =
        "x1^l1*x2^l2*x3^l3*((b1+b2)/l3+(a11+a21)*x1/l3+(a12+a22)*x2/l3-(a23+a33)*x3/l1)";
    r.custom_sampler = sample_equal_abg;
    rules.push_back(std::move(r));
  }

  for (Rule& r : rules) compile(r);
  return rules;
}

}  // namespace

const std::vector<Rule>& catalog3d() {
  static const std::vector<Rule> rules = build();
  return rules;
}

}  // namespace lvfi
