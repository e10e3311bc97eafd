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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lvfi/expr.hpp"
#include "lvfi/model.hpp"

namespace lvfi {

struct Region {
  double lo = 0.1;
  double hi = 10.0;
};

// Max over n seeded uniform points in region^dim of
// |f.grad H| / ((1 + |f|)(1 + |grad H|)). Points closer than 1e-6 to a log
// singularity are redrawn a bounded number of times.
double lie_check(const Expr& h, const LVSystem& s, int n = 50, Region region = {},
                 std::uint64_t seed = 42);

enum class Method { kRk4, kRk45 };
std::string to_string(Method m);

struct Trajectory {
  std::vector<double> times;
  Eigen::MatrixXd states;  // one row per time
  Method method = Method::kRk4;
  double step = 0.0;       // fixed step, or the initial step for rk45
  int step_count = 0;
  bool blew_up = false;    // stopped early because a coordinate exceeded 1e8
};

// Fixed-step classical RK4, or adaptive Dormand-Prince 5(4) with rtol 1e-9
// and atol 1e-12. Throws std::runtime_error on a non-finite state.
Trajectory integrate(const LVSystem& s, const Eigen::VectorXd& x0, double t_end, double h,
                     Method method = Method::kRk4);

struct ConservationReport {
  double h0 = 0.0;
  double max_abs_drift = 0.0;
  double max_rel_drift = 0.0;  // max |H(x(t)) - H0| / (1 + |H0|)
  double lie_max = 0.0;
  int sample_count = 0;
  bool blew_up = false;
};

// Drift of h along tr. lie_max is left at 0 here.
ConservationReport conservation_report(const Expr& h, const Trajectory& tr);

struct ConservationRun {
  Eigen::VectorXd x0;
  Trajectory trajectory;
  ConservationReport report;
  int starts_tried = 0;
  double horizon = 0.0;    // end of the checked time window
  bool truncated = false;  // orbit left the well-conditioned region first
};

// Integrates from the all-ones point and, if that rests, leaves h's domain or blows
// up, from further seeded points: first in region^dim, then near numerically
// located equilibria. Returns the first orbit that stays within |x| <= 100 and
// 1e-2 of h's singular set up to t_end. Failing that, returns the start whose
// orbit stays there longest, truncated at the exit, if it lasts to t >= 1.
std::optional<ConservationRun> conservation_search(const Expr& h, const LVSystem& s,
                                                   double t_end, double step, Method method,
                                                   Region region, std::uint64_t seed,
                                                   int max_starts = 40);

}  // namespace lvfi
