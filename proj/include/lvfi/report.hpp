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

#include <vector>

#include "json.hpp"
#include "lvfi/detect.hpp"
#include "lvfi/expr.hpp"
#include "lvfi/model.hpp"
#include "lvfi/oracle.hpp"
#include "lvfi/verify.hpp"

namespace lvfi {

using Json = nlohmann::ordered_json;

// Lossless AST: {"op": "const"|"var"|"add"|"mul"|"pow"|"ln_abs"|"exp", ...}.
// Rational constants and exponents are "p/q" strings, float constants are numbers.
Json expr_to_json(const Expr& h);
Expr expr_from_json(const Json& j);  // throws InputError

Json system_to_json(const LVSystem& s);
Json factor_to_json(const IntegratingFactor& r);
Json detection_to_json(const Detection& d);
Json diagnostic_to_json(const Diagnostic& d);
Json condition_report_to_json(const ConditionReport& c);
Json conservation_to_json(const ConservationReport& r);

// One list per component of {"exponents": [...], "coefficient": "p/q"}.
Json residual_to_json(const std::vector<LaurentPoly>& residual);

}  // namespace lvfi
