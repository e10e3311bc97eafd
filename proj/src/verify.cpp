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

#include "lvfi/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <boost/numeric/odeint.hpp>
#include <boost/numeric/odeint/external/eigen/eigen.hpp>

namespace lvfi {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kBlowUp = 1e8;
constexpr double kLogClearance = 1e-6;
// A conservation run must keep its orbit this far from the singular set of H
// and inside this box; otherwise drift measures conditioning, not the solver.
constexpr double kOrbitClearance = 1e-2;
constexpr double kOrbitBound = 1e2;
// Largest step * |J(x)| at which a fixed step still resolves the local
// dynamics to roughly 1e-10 per step.
constexpr double kResolution = 0.02;
// Largest ratio of summed term magnitudes to |H| before cancellation in H
// itself swamps the drift being measured.
constexpr double kCancellation = 1e4;
// Relative |f(x0)| below which a start is taken to be an equilibrium.
constexpr double kMinSpeed = 1e-6;
// Shortest prefix accepted when no orbit stays well conditioned to t_end.
constexpr double kMinHorizon = 1.0;
constexpr int kResampleLimit = 1000;

std::vector<double> to_vector(const Eigen::VectorXd& x) {
  return std::vector<double>(x.data(), x.data() + x.size());
}

Eigen::MatrixXd jacobian(const FloatSystem& f, const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd j(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) j(i, k) = x(i) * f.A(i, k);
    j(i, i) += f.b(i) + f.A.row(i).dot(x);
  }
  return j;
}

// Equilibria found by Newton from seeded starts; deduplicated.
std::vector<Eigen::VectorXd> equilibria(const FloatSystem& f, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<Eigen::VectorXd> found;
  const int n = f.dim();
  for (int attempt = 0; attempt < 30; ++attempt) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = u(rng);
    for (int it = 0; it < 60; ++it) {
      Eigen::VectorXd fx = f.field(x);
      if (fx.norm() < 1e-13 * (1.0 + x.norm())) break;
      Eigen::VectorXd dx = jacobian(f, x).fullPivLu().solve(-fx);
      if (!dx.allFinite()) break;
      x += dx;
    }
    if (!x.allFinite() || f.field(x).norm() > 1e-10 * (1.0 + x.norm())) continue;
    bool fresh = true;
    for (const Eigen::VectorXd& y : found) fresh = fresh && (x - y).norm() > 1e-8 * (1.0 + y.norm());
    if (fresh) found.push_back(x);
  }
  auto spread = [&f](const Eigen::VectorXd& x) {
    return jacobian(f, x).eigenvalues().real().cwiseAbs().maxCoeff();
  };
  std::stable_sort(found.begin(), found.end(), [&](const auto& a, const auto& b) {
    return spread(a) < spread(b);
  });
  return found;
}

// Sum of |t| over the top-level terms of h.
double term_magnitude(const Expr& h, const Eigen::VectorXd& x) {
  if (h.kind() != Expr::Kind::kAdd) return std::fabs(eval(h, x));
  double m = 0.0;
  for (const Expr& t : h.args()) m += std::fabs(eval(t, x));
  return m;
}

}  // namespace

double lie_check(const Expr& h, const LVSystem& s, int n, Region region, std::uint64_t seed) {
  const int dim = s.dim();
  if (max_var_index(h) >= dim) throw InputError("integral uses more variables than the system");
  std::vector<Expr> grad = gradient(h, dim);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(region.lo, region.hi);
  const FloatSystem& f = s.numeric();
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd x(dim);
    int tries = 0;
    do {
      if (++tries > kResampleLimit) {
        throw DomainError("no sample point clear of log singularities", to_string(h),
                          to_vector(x));
      }
      for (int i = 0; i < dim; ++i) x(i) = u(rng);
    } while (min_log_argument(h, to_vector(x)) < kLogClearance);
    Eigen::VectorXd fx = f.field(x);
    Eigen::VectorXd g(dim);
    for (int i = 0; i < dim; ++i) g(i) = eval(grad[i], x);
    double m = std::fabs(fx.dot(g)) / ((1.0 + fx.norm()) * (1.0 + g.norm()));
    if (!(m <= worst)) worst = m;  // NaN propagates as failure
  }
  return worst;
}

std::string to_string(Method m) { return m == Method::kRk4 ? "rk4" : "rk45"; }

Trajectory integrate(const LVSystem& s, const Eigen::VectorXd& x0, double t_end, double h,
                     Method method) {
  if (!(h > 0) || !(t_end > 0)) throw InputError("step and end time must be positive");
  if (x0.size() != s.dim()) throw InputError("initial point has the wrong dimension");
  if (!x0.allFinite()) throw InputError("initial point is not finite");
  const FloatSystem& f = s.numeric();
  auto rhs = [&f](const Eigen::VectorXd& x, Eigen::VectorXd& dxdt, double) { dxdt = f.field(x); };

  Trajectory tr;
  tr.method = method;
  tr.step = h;
  std::vector<Eigen::VectorXd> states{x0};
  tr.times.push_back(0.0);
  Eigen::VectorXd x = x0;
  double t = 0.0;
  auto record = [&]() {
    if (!x.allFinite()) throw std::runtime_error("non-finite state at t = " + std::to_string(t));
    states.push_back(x);
    tr.times.push_back(t);
    ++tr.step_count;
    if (x.cwiseAbs().maxCoeff() > kBlowUp) tr.blew_up = true;
  };

  if (method == Method::kRk4) {
    odeint::runge_kutta4<Eigen::VectorXd, double, Eigen::VectorXd, double,
                         odeint::vector_space_algebra>
        stepper;
    const long n = std::lround(std::ceil(t_end / h - 1e-9));
    for (long k = 0; k < n && !tr.blew_up; ++k) {
      double dt = std::min(h, t_end - t);
      stepper.do_step(rhs, x, t, dt);
      t = (k + 1 == n) ? t_end : t + dt;
      record();
    }
  } else {
    using Dopri = odeint::runge_kutta_dopri5<Eigen::VectorXd, double, Eigen::VectorXd, double,
                                             odeint::vector_space_algebra>;
    auto stepper = odeint::make_controlled(1e-12, 1e-9, Dopri());
    double dt = h;
    int rejected = 0;
    while (t < t_end && !tr.blew_up) {
      dt = std::min(dt, t_end - t);
      if (stepper.try_step(rhs, x, t, dt) == odeint::success) {
        rejected = 0;
        record();
      } else if (++rejected > 500) {
        throw std::runtime_error("step size underflow at t = " + std::to_string(t));
      }
    }
  }
  tr.states.resize(static_cast<Eigen::Index>(states.size()), s.dim());
  for (std::size_t k = 0; k < states.size(); ++k) {
    tr.states.row(static_cast<Eigen::Index>(k)) = states[k].transpose();
  }
  return tr;
}

ConservationReport conservation_report(const Expr& h, const Trajectory& tr) {
  ConservationReport rep;
  rep.blew_up = tr.blew_up;
  rep.sample_count = static_cast<int>(tr.states.rows());
  if (rep.sample_count == 0) return rep;
  Eigen::VectorXd x = tr.states.row(0).transpose();
  rep.h0 = eval(h, x);
  for (Eigen::Index k = 1; k < tr.states.rows(); ++k) {
    x = tr.states.row(k).transpose();
    double d = std::fabs(eval(h, x) - rep.h0);
    if (!(d <= rep.max_abs_drift)) rep.max_abs_drift = d;
  }
  rep.max_rel_drift = rep.max_abs_drift / (1.0 + std::fabs(rep.h0));
  return rep;
}

std::optional<ConservationRun> conservation_search(const Expr& h, const LVSystem& s,
                                                   double t_end, double step, Method method,
                                                   Region region, std::uint64_t seed,
                                                   int max_starts) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(region.lo, region.hi);
  std::uniform_real_distribution<double> dir(-1.0, 1.0);
  // Number of leading states inside the well-conditioned region.
  const FloatSystem& f = s.numeric();
  auto clear_prefix = [&](const Trajectory& tr) {
    Eigen::Index r = 0;
    for (; r < tr.states.rows(); ++r) {
      Eigen::VectorXd x = tr.states.row(r).transpose();
      if (!(x.cwiseAbs().maxCoeff() <= kOrbitBound)) break;
      if (!(step * jacobian(f, x).lpNorm<Eigen::Infinity>() <= kResolution)) break;
      try {
        if (!(singular_clearance(h, to_vector(x)) >= kOrbitClearance)) break;
        if (!(term_magnitude(h, x) <= kCancellation * (1.0 + std::fabs(eval(h, x))))) break;
      } catch (const DomainError&) {
        break;
      }
    }
    return r;
  };
  // Random starts in a quadratic field mostly escape to infinity; bounded
  // orbits are found more reliably near equilibria.
  const int box_starts = std::max(1, max_starts / 4);
  std::vector<Eigen::VectorXd> centers;
  std::optional<ConservationRun> best;
  for (int k = 0; k < max_starts; ++k) {
    Eigen::VectorXd x0 = Eigen::VectorXd::Ones(s.dim());
    if (k == box_starts) centers = equilibria(s.numeric(), region.hi, rng);
    if (k >= box_starts && !centers.empty()) {
      const Eigen::VectorXd& c = centers[static_cast<std::size_t>(k - box_starts) % centers.size()];
      double radius = 0.2 * std::pow(0.5, ((k - box_starts) / static_cast<int>(centers.size())) % 6);
      for (int i = 0; i < s.dim(); ++i) x0(i) = c(i) + radius * (1.0 + std::fabs(c(i))) * dir(rng);
    } else if (k > 0) {
      for (int i = 0; i < s.dim(); ++i) x0(i) = u(rng);
    }
    // A resting start conserves every function and checks nothing.
    if (!(f.field(x0).lpNorm<Eigen::Infinity>() >= kMinSpeed * (1.0 + x0.lpNorm<Eigen::Infinity>())))
      continue;
    Trajectory tr;
    try {
      tr = integrate(s, x0, t_end, step, method);
    } catch (const std::runtime_error&) {
      continue;
    }
    const Eigen::Index n = clear_prefix(tr);
    if (n == tr.states.rows() && !tr.blew_up) {
      ConservationReport rep = conservation_report(h, tr);
      return ConservationRun{x0, std::move(tr), rep, k + 1, t_end, false};
    }
    if (n < 2 || (best && tr.times[static_cast<std::size_t>(n - 1)] <= best->horizon)) continue;
    Trajectory cut = tr;
    cut.times.resize(static_cast<std::size_t>(n));
    cut.states.conservativeResize(n, Eigen::NoChange);
    cut.step_count = static_cast<int>(n - 1);
    cut.blew_up = false;
    const double horizon = cut.times.back();
    best = ConservationRun{x0, cut, conservation_report(h, cut), k + 1, horizon, true};
  }
  if (best && best->horizon >= kMinHorizon) {
    best->starts_tried = max_starts;
    return best;
  }
  return std::nullopt;
}

}  // namespace lvfi
