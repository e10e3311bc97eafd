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
#include <random>
#include <string>
#include <vector>

#include "lvfi/linalg.hpp"
#include "lvfi/rule.hpp"

namespace lvfi {

// B_k and A_ki for a given (alpha, beta, gamma):
//   B1 = b1 alpha - b3 gamma, B2 = b2 alpha + b3 beta, B3 = b1 beta + b2 gamma,
//   A1i = a1i alpha - a3i gamma, A2i = a2i alpha + a3i beta, A3i = a1i beta + a2i gamma.
struct TermTable {
  std::array<Rational, 3> B;
  RMatrix A;  // A(k, i) holds A_{k+1, i+1}
};

TermTable term_table(const std::array<Rational, 3>& abg, const ExactSystem& s);

// Nullspace basis in (alpha, beta, gamma) of the listed term-table entries
// ("B2", "A23", ...) set to zero. Plain "alpha", "beta", "gamma" pin that
// component to zero.
std::vector<std::array<Rational, 3>> solve_abg(const std::vector<std::string>& constraints,
                                               const ExactSystem& s);

const std::vector<Rule>& catalog3d();

}  // namespace lvfi
