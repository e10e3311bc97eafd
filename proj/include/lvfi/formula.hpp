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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lvfi/expr.hpp"
#include "lvfi/model.hpp"

namespace lvfi {

class FormulaError : public InputError {
 public:
  using InputError::InputError;
};

// The named scalars a rule formula may mention for a system of dimension n:
// b1..bn, a11..ann, e1..en, alpha, beta, gamma, l1..ln, lam.
class ParamSpace {
 public:
  explicit ParamSpace(int dim);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(names_.size()); }
  std::optional<int> index(std::string_view name) const;
  const std::string& name(int k) const { return names_[static_cast<std::size_t>(k)]; }

  int b(int i) const { return i; }
  int a(int i, int j) const { return dim_ + i * dim_ + j; }
  int e(int i) const { return dim_ + dim_ * dim_ + i; }
  int alpha() const { return 2 * dim_ + dim_ * dim_; }
  int beta() const { return alpha() + 1; }
  int gamma() const { return alpha() + 2; }
  int l(int i) const { return alpha() + 3 + i; }
  int lam() const { return alpha() + 3 + dim_; }

  // Values vector with the system coefficients filled in, the rest zero.
  std::vector<Rational> values(const ExactSystem& s) const;

 private:
  int dim_;
  std::vector<std::string> names_;
  std::map<std::string, int, std::less<>> index_;
};

using Resolver = std::function<std::optional<Expr>(std::string_view)>;

// Parses infix text: + - * / ^, parentheses, numbers ("3", "0.5", "1e-3"),
// ln(u) or ln|u| for ln|u|, exp(u). Exponents must fold to constants.
Expr parse_formula(std::string_view text, const Resolver& resolve);

// Definitions of the 3D term-table entries B1..B3, A11..A33.
std::optional<std::string> term_table_formula(std::string_view name);

// x_i -> Var(i-1); parameter k -> Var(dim + k); term-table names expand.
Resolver symbolic_resolver(const ParamSpace& space);

// Only x1..x<dim>; anything else is unknown.
Resolver coordinate_resolver(int dim);

// x_i -> Var(i-1); parameter k -> its value; term-table names expand.
Resolver numeric_resolver(const ParamSpace& space, const std::vector<Rational>& values);

}  // namespace lvfi
