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

#include <string>
#include <string_view>
#include <vector>

#include "lvfi/model.hpp"
#include "lvfi/rule.hpp"

namespace lvfi {

struct DetectionResult {
  std::vector<Detection> detections;
  std::vector<Diagnostic> diagnostics;  // rules whose conditions held but failed later
};

// Rules for dimension 2 or 3.
const std::vector<Rule>& catalog(int dim);
// Throws InputError for an unknown id.
const Rule& find_rule(std::string_view id);
std::vector<std::string> rule_ids();

struct ConditionReport {
  std::string id;
  std::string description;
  int dim = 2;
  Ansatz ansatz = Ansatz::kPlanar;
  std::vector<std::string> residuals;  // must vanish
  std::vector<std::string> guards;     // must not vanish, written "expr != 0"
  std::vector<std::string> informational;
  std::vector<std::string> abg_constraints;
  std::string printed_h;
};
ConditionReport rule_conditions(std::string_view id);

// Applies one rule under every coordinate permutation, identity first, and
// maps each integral back to the input coordinates.
RuleOutcome apply_rule_closed(const Rule& rule, const ExactSystem& s);

DetectionResult detect2d(const LVSystem& s);
DetectionResult detect3d(const LVSystem& s);
DetectionResult detect(const LVSystem& s);
DetectionResult detect(const ExactSystem& s);

// Rewrites h in a canonical term order so that equal integrals print equally.
Expr canonical_integral(const Expr& h, int dim);

}  // namespace lvfi
