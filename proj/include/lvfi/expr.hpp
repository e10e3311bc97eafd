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

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lvfi/model.hpp"

namespace lvfi {

// Evaluation outside the domain of an expression: ln|0|, 0^negative, or a
// negative base raised to a non-integer power.
class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& what, std::string subexpression, std::vector<double> point)
      : std::runtime_error(what),
        subexpression_(std::move(subexpression)),
        point_(std::move(point)) {}
  const std::string& subexpression() const { return subexpression_; }
  const std::vector<double>& point() const { return point_; }

 private:
  std::string subexpression_;
  std::vector<double> point_;
};

// Immutable expression tree. Copies share structure.
class Expr {
 public:
  enum class Kind { kConst, kVar, kAdd, kMul, kPow, kLnAbs, kExp };

  Expr();  // the constant 0
  static Expr constant(Scalar value);
  static Expr var(int index);
  static Expr add(std::vector<Expr> terms);
  static Expr mul(std::vector<Expr> factors);
  static Expr pow(Expr base, Scalar exponent);
  static Expr ln_abs(Expr arg);
  static Expr exp(Expr arg);

  Kind kind() const;
  const Scalar& value() const;     // kConst
  int index() const;               // kVar
  const std::vector<Expr>& args() const;  // kAdd, kMul, kPow (base), kLnAbs, kExp
  const Scalar& exponent() const;  // kPow
  double exponent_value() const;   // kPow, cached binary64

  bool is_constant() const { return kind() == Kind::kConst; }
  bool is_zero() const;
  bool is_one() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);

double eval(const Expr& h, const std::vector<double>& x);
double eval(const Expr& h, const Eigen::VectorXd& x);

Expr diff(const Expr& h, int i);
std::vector<Expr> gradient(const Expr& h, int dim);
Expr simplify(const Expr& h);

// The i-th component of the vector field as an expression.
Expr field_component(const LVSystem& s, int i);
Expr lie_derivative(const Expr& h, const LVSystem& s);

// Replaces Var(i) by Var(map[i]).
Expr relabel(const Expr& h, const std::vector<int>& map);

// Largest variable index used, or -1.
int max_var_index(const Expr& h);

// Smallest |arg| over ln|.| nodes at x; +inf when there are none.
double min_log_argument(const Expr& h, const std::vector<double>& x);

// Smallest |u| at x over ln|u| and bases u of negative integer powers, and
// smallest signed u over bases of non-integer powers; +inf when h has no such
// node. Negative means x is outside the domain of h.
double singular_clearance(const Expr& h, const std::vector<double>& x);

// Infix form such as "x1*x2 + x1^2*x2 - 7*x1"; variables print one-based.
std::string to_string(const Expr& h);

}  // namespace lvfi
