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

// Helpers shared by the test binaries.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lvfi/expr.hpp"
#include "lvfi/formula.hpp"
#include "lvfi/model.hpp"
#include "lvfi/rational.hpp"

namespace lvfi::testing {

inline Rational q(const std::string& text) { return *parse_rational(text); }

// Builds an exact system from row-major string entries.
inline ExactSystem make_system(const std::vector<std::string>& b,
                               const std::vector<std::vector<std::string>>& a,
                               const std::vector<std::string>& e) {
  const int n = static_cast<int>(b.size());
  ExactSystem s(n);
  for (int i = 0; i < n; ++i) {
    s.b(i) = q(b[i]);
    s.e(i) = q(e[i]);
    for (int j = 0; j < n; ++j) s.A(i, j) = q(a[i][j]);
  }
  return s;
}

inline ExactSystem volterra() { return make_system({"1", "-1"}, {{"0", "-1"}, {"1", "0"}}, {"0", "0"}); }

// A system with every entry a small random rational, zero with probability 1/5.
inline ExactSystem random_system(int dim, std::mt19937_64& rng, bool force_e_nonzero = false) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  auto draw = [&]() { return Rational(num(rng)) / Rational(den(rng)); };
  ExactSystem s(dim);
  for (int i = 0; i < dim; ++i) {
    s.b(i) = draw();
    s.e(i) = draw();
    while (force_e_nonzero && s.e(i) == 0) s.e(i) = draw();
    for (int j = 0; j < dim; ++j) s.A(i, j) = draw();
  }
  return s;
}

// Expression in x1..x<dim>.
inline Expr parse_h(const std::string& text, int dim) {
  return parse_formula(text, coordinate_resolver(dim));
}

inline Expr x(int i) { return Expr::var(i); }
inline Expr c(int v) { return Expr::constant(Scalar(v)); }
inline Expr c(const std::string& text) { return Expr::constant(Scalar(q(text))); }

// Random expression over `dim` variables that stays finite on (0.5, 2)^dim.
inline Expr random_expr(int dim, int depth, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  std::uniform_int_distribution<int> var(0, dim - 1);
  std::uniform_int_distribution<int> small(-3, 3);
  switch (pick(rng)) {
    case 0:
      return Expr::var(var(rng));
    case 1: {
      int k = small(rng);
      return Expr::constant(Scalar(Rational(k == 0 ? 1 : k) / Rational(2)));
    }
    case 2:
      return Expr::add({random_expr(dim, depth - 1, rng), random_expr(dim, depth - 1, rng)});
    case 3:
      return Expr::mul({random_expr(dim, depth - 1, rng), random_expr(dim, depth - 1, rng)});
    case 4: {
      // Rational powers of a variable keep the base positive on the box.
      std::uniform_int_distribution<int> den(1, 3);
      int k = small(rng);
      return Expr::pow(Expr::var(var(rng)), Scalar(Rational(k == 0 ? 2 : k) / Rational(den(rng))));
    }
    case 5:
      return Expr::ln_abs(Expr::add({c(3), Expr::var(var(rng)), random_expr(dim, 0, rng)}));
    default:
      return Expr::exp(Expr::mul({c("1/4"), random_expr(dim, depth - 1, rng)}));
  }
}

}  // namespace lvfi::testing
