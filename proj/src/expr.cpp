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

#include "lvfi/expr.hpp"

#include <cmath>
#include <limits>

namespace lvfi {

struct Expr::Node {
  Kind kind = Kind::kConst;
  Scalar value;         // kConst value or kPow exponent
  double cached = 0.0;  // binary64 image of `value`
  int index = 0;
  std::vector<Expr> args;
};

namespace {

std::shared_ptr<Expr::Node> make_node(Expr::Kind kind) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  return n;
}

}  // namespace

Expr::Expr() : Expr(constant(Scalar(0))) {}

Expr Expr::constant(Scalar value) {
  auto n = make_node(Kind::kConst);
  n->cached = value.to_double();
  n->value = std::move(value);
  return Expr(std::move(n));
}

Expr Expr::var(int index) {
  if (index < 0) throw std::invalid_argument("negative variable index");
  auto n = make_node(Kind::kVar);
  n->index = index;
  return Expr(std::move(n));
}

Expr Expr::add(std::vector<Expr> terms) {
  if (terms.empty()) throw std::invalid_argument("empty sum");
  auto n = make_node(Kind::kAdd);
  n->args = std::move(terms);
  return Expr(std::move(n));
}

Expr Expr::mul(std::vector<Expr> factors) {
  if (factors.empty()) throw std::invalid_argument("empty product");
  auto n = make_node(Kind::kMul);
  n->args = std::move(factors);
  return Expr(std::move(n));
}

Expr Expr::pow(Expr base, Scalar exponent) {
  auto n = make_node(Kind::kPow);
  n->cached = exponent.to_double();
  n->value = std::move(exponent);
  n->args = {std::move(base)};
  return Expr(std::move(n));
}

Expr Expr::ln_abs(Expr arg) {
  auto n = make_node(Kind::kLnAbs);
  n->args = {std::move(arg)};
  return Expr(std::move(n));
}

Expr Expr::exp(Expr arg) {
  auto n = make_node(Kind::kExp);
  n->args = {std::move(arg)};
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const Scalar& Expr::value() const { return node_->value; }
int Expr::index() const { return node_->index; }
const std::vector<Expr>& Expr::args() const { return node_->args; }
const Scalar& Expr::exponent() const { return node_->value; }
double Expr::exponent_value() const { return node_->cached; }

bool Expr::is_zero() const { return kind() == Kind::kConst && value().is_zero(); }
bool Expr::is_one() const { return kind() == Kind::kConst && value().is_one(); }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::kConst:
      return a.value() == b.value();
    case Expr::Kind::kVar:
      return a.index() == b.index();
    case Expr::Kind::kPow:
      if (!(a.exponent() == b.exponent())) return false;
      break;
    default:
      break;
  }
  return a.args() == b.args();
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::add({a, b}); }
Expr operator-(const Expr& a) { return Expr::mul({Expr::constant(Scalar(-1)), a}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::add({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::mul({a, b}); }

namespace {

bool is_integral(const Scalar& s) {
  if (s.is_rational()) return is_integer(s.rational());
  double v = s.to_double();
  return std::floor(v) == v;
}

[[noreturn]] void domain_fail(const char* what, const Expr& sub, const double* x, int n) {
  throw DomainError(std::string(what) + " in " + to_string(sub), to_string(sub),
                    std::vector<double>(x, x + n));
}

double eval_impl(const Expr& h, const double* x, int n) {
  switch (h.kind()) {
    case Expr::Kind::kConst:
      return h.value().to_double();
    case Expr::Kind::kVar:
      if (h.index() >= n) throw std::out_of_range("variable index out of range");
      return x[h.index()];
    case Expr::Kind::kAdd: {
      double s = 0.0;
      for (const Expr& t : h.args()) s += eval_impl(t, x, n);
      return s;
    }
    case Expr::Kind::kMul: {
      double p = 1.0;
      for (const Expr& t : h.args()) p *= eval_impl(t, x, n);
      return p;
    }
    case Expr::Kind::kPow: {
      double base = eval_impl(h.args()[0], x, n);
      double k = h.exponent_value();
      if (base == 0.0 && k < 0) domain_fail("zero to a negative power", h, x, n);
      if (base < 0.0 && !is_integral(h.exponent()))
        domain_fail("negative base with non-integer exponent", h, x, n);
      if (k == 1.0) return base;
      if (k == 2.0) return base * base;
      if (k == -1.0) return 1.0 / base;
      return std::pow(base, k);
    }
    case Expr::Kind::kLnAbs: {
      double u = eval_impl(h.args()[0], x, n);
      if (u == 0.0) domain_fail("logarithm of zero", h, x, n);
      return std::log(std::fabs(u));
    }
    case Expr::Kind::kExp:
      return std::exp(eval_impl(h.args()[0], x, n));
  }
  return 0.0;
}

}  // namespace

double eval(const Expr& h, const std::vector<double>& x) {
  return eval_impl(h, x.data(), static_cast<int>(x.size()));
}

double eval(const Expr& h, const Eigen::VectorXd& x) {
  return eval_impl(h, x.data(), static_cast<int>(x.size()));
}

Expr simplify(const Expr& h) {
  switch (h.kind()) {
    case Expr::Kind::kConst:
    case Expr::Kind::kVar:
      return h;
    case Expr::Kind::kAdd: {
      std::vector<Expr> terms;
      Scalar constant(0);
      bool has_constant = false;
      auto absorb = [&](const Expr& t) {
        if (t.is_constant()) {
          constant = constant + t.value();
          has_constant = true;
        } else {
          terms.push_back(t);
        }
      };
      for (const Expr& a : h.args()) {
        Expr s = simplify(a);
        if (s.kind() == Expr::Kind::kAdd) {
          for (const Expr& t : s.args()) absorb(t);
        } else {
          absorb(s);
        }
      }
      if (has_constant && !constant.is_zero()) terms.push_back(Expr::constant(constant));
      if (terms.empty()) {
        return Expr::constant(has_constant ? constant : Scalar(0));
      }
      if (terms.size() == 1) return terms.front();
      return Expr::add(std::move(terms));
    }
    case Expr::Kind::kMul: {
      std::vector<Expr> factors;
      Scalar constant(1);
      auto absorb = [&](const Expr& t) {
        if (t.is_constant()) {
          constant = constant * t.value();
        } else {
          factors.push_back(t);
        }
      };
      for (const Expr& a : h.args()) {
        Expr s = simplify(a);
        if (s.kind() == Expr::Kind::kMul) {
          for (const Expr& t : s.args()) absorb(t);
        } else {
          absorb(s);
        }
      }
      if (constant.is_zero()) return Expr::constant(constant);
      if (factors.empty()) return Expr::constant(constant);
      if (!constant.is_one()) factors.insert(factors.begin(), Expr::constant(constant));
      if (factors.size() == 1) return factors.front();
      return Expr::mul(std::move(factors));
    }
    case Expr::Kind::kPow: {
      Expr base = simplify(h.args()[0]);
      const Scalar& k = h.exponent();
      if (k.is_zero()) return Expr::constant(Scalar(1));
      if (k.is_one()) return base;
      if (base.is_constant()) {
        const Scalar& c = base.value();
        if (c.is_one()) return base;
        if (c.is_rational() && k.is_rational() && is_integer(k.rational()) &&
            !(c.is_zero() && k.rational() < 0)) {
          long kk = numerator(k.rational()).convert_to<long>();
          return Expr::constant(Scalar(lvfi::pow(c.rational(), kk)));
        }
      }
      return Expr::pow(base, k);
    }
    case Expr::Kind::kLnAbs: {
      Expr arg = simplify(h.args()[0]);
      if (arg.is_constant() && arg.value().is_rational() &&
          abs(arg.value().rational()) == 1)
        return Expr::constant(Scalar(0));
      return Expr::ln_abs(arg);
    }
    case Expr::Kind::kExp: {
      Expr arg = simplify(h.args()[0]);
      if (arg.is_zero()) return Expr::constant(Scalar(1));
      return Expr::exp(arg);
    }
  }
  return h;
}

namespace {

Expr diff_impl(const Expr& h, int i) {
  switch (h.kind()) {
    case Expr::Kind::kConst:
      return Expr::constant(Scalar(0));
    case Expr::Kind::kVar:
      return Expr::constant(Scalar(h.index() == i ? 1 : 0));
    case Expr::Kind::kAdd: {
      std::vector<Expr> terms;
      for (const Expr& t : h.args()) terms.push_back(diff_impl(t, i));
      return Expr::add(std::move(terms));
    }
    case Expr::Kind::kMul: {
      std::vector<Expr> terms;
      const auto& f = h.args();
      for (std::size_t k = 0; k < f.size(); ++k) {
        Expr dk = diff_impl(f[k], i);
        if (dk.is_zero()) continue;
        std::vector<Expr> factors = f;
        factors[k] = dk;
        terms.push_back(Expr::mul(std::move(factors)));
      }
      if (terms.empty()) return Expr::constant(Scalar(0));
      return Expr::add(std::move(terms));
    }
    case Expr::Kind::kPow: {
      const Expr& u = h.args()[0];
      Expr du = diff_impl(u, i);
      const Scalar& k = h.exponent();
      Scalar km1 = k + Scalar(-1);
      return Expr::mul({Expr::constant(k), Expr::pow(u, km1), du});
    }
    case Expr::Kind::kLnAbs: {
      const Expr& u = h.args()[0];
      return Expr::mul({diff_impl(u, i), Expr::pow(u, Scalar(-1))});
    }
    case Expr::Kind::kExp:
      return Expr::mul({h, diff_impl(h.args()[0], i)});
  }
  return Expr::constant(Scalar(0));
}

}  // namespace

Expr diff(const Expr& h, int i) { return simplify(diff_impl(h, i)); }

std::vector<Expr> gradient(const Expr& h, int dim) {
  std::vector<Expr> g;
  for (int i = 0; i < dim; ++i) g.push_back(diff(h, i));
  return g;
}

Expr field_component(const LVSystem& s, int i) {
  std::vector<Expr> rate = {Expr::constant(s.b(i))};
  for (int j = 0; j < s.dim(); ++j) {
    rate.push_back(Expr::mul({Expr::constant(s.a(i, j)), Expr::var(j)}));
  }
  Expr f = Expr::add({Expr::mul({Expr::var(i), Expr::add(std::move(rate))}),
                      Expr::constant(s.e(i))});
  return simplify(f);
}

Expr lie_derivative(const Expr& h, const LVSystem& s) {
  std::vector<Expr> terms;
  for (int i = 0; i < s.dim(); ++i) {
    terms.push_back(Expr::mul({field_component(s, i), diff(h, i)}));
  }
  return simplify(Expr::add(std::move(terms)));
}

Expr relabel(const Expr& h, const std::vector<int>& map) {
  switch (h.kind()) {
    case Expr::Kind::kConst:
      return h;
    case Expr::Kind::kVar:
      return Expr::var(map.at(h.index()));
    case Expr::Kind::kAdd:
    case Expr::Kind::kMul: {
      std::vector<Expr> a;
      for (const Expr& t : h.args()) a.push_back(relabel(t, map));
      return h.kind() == Expr::Kind::kAdd ? Expr::add(std::move(a)) : Expr::mul(std::move(a));
    }
    case Expr::Kind::kPow:
      return Expr::pow(relabel(h.args()[0], map), h.exponent());
    case Expr::Kind::kLnAbs:
      return Expr::ln_abs(relabel(h.args()[0], map));
    case Expr::Kind::kExp:
      return Expr::exp(relabel(h.args()[0], map));
  }
  return h;
}

int max_var_index(const Expr& h) {
  if (h.kind() == Expr::Kind::kVar) return h.index();
  if (h.kind() == Expr::Kind::kConst) return -1;
  int m = -1;
  for (const Expr& t : h.args()) m = std::max(m, max_var_index(t));
  return m;
}

double min_log_argument(const Expr& h, const std::vector<double>& x) {
  double m = std::numeric_limits<double>::infinity();
  if (h.kind() == Expr::Kind::kConst || h.kind() == Expr::Kind::kVar) return m;
  if (h.kind() == Expr::Kind::kLnAbs) m = std::fabs(eval(h.args()[0], x));
  for (const Expr& t : h.args()) m = std::min(m, min_log_argument(t, x));
  return m;
}

double singular_clearance(const Expr& h, const std::vector<double>& x) {
  double m = std::numeric_limits<double>::infinity();
  if (h.kind() == Expr::Kind::kConst || h.kind() == Expr::Kind::kVar) return m;
  if (h.kind() == Expr::Kind::kPow && !is_integral(h.exponent())) {
    m = eval(h.args()[0], x);  // signed: a negative base is outside the domain
  } else if (h.kind() == Expr::Kind::kLnAbs ||
             (h.kind() == Expr::Kind::kPow && h.exponent_value() < 0)) {
    m = std::fabs(eval(h.args()[0], x));
  }
  for (const Expr& t : h.args()) m = std::min(m, singular_clearance(t, x));
  return m;
}

namespace {

// Precedence: sum 1, product 2, power 3, atom 4.
int precedence(const Expr& h) {
  switch (h.kind()) {
    case Expr::Kind::kAdd:
      return 1;
    case Expr::Kind::kMul:
      return 2;
    case Expr::Kind::kPow:
      return 3;
    case Expr::Kind::kConst: {
      const Scalar& v = h.value();
      if (v.to_double() < 0) return 1;
      if (v.is_rational() && !is_integer(v.rational())) return 2;
      return 4;
    }
    default:
      return 4;
  }
}

std::string wrap(const Expr& h, int min_prec);

std::string print(const Expr& h) {
  switch (h.kind()) {
    case Expr::Kind::kConst:
      return h.value().to_string();
    case Expr::Kind::kVar:
      return "x" + std::to_string(h.index() + 1);
    case Expr::Kind::kAdd: {
      std::string out;
      bool first = true;
      for (const Expr& t : h.args()) {
        std::string piece = print(t);
        bool negative = !piece.empty() && piece[0] == '-' && precedence(t) != 1;
        if (t.kind() == Expr::Kind::kConst && t.value().to_double() < 0) negative = true;
        if (first) {
          out += t.kind() == Expr::Kind::kAdd ? "(" + piece + ")" : piece;
        } else if (negative) {
          out += " - " + piece.substr(1);
        } else {
          out += " + " + (t.kind() == Expr::Kind::kAdd ? "(" + piece + ")" : piece);
        }
        first = false;
      }
      return out;
    }
    case Expr::Kind::kMul: {
      std::string out;
      const auto& f = h.args();
      std::size_t start = 0;
      if (f.size() > 1 && f[0].is_constant()) {
        const Scalar& c = f[0].value();
        if (c.to_double() == -1.0 && c.is_rational()) {
          out = "-";
          start = 1;
        } else if (c.to_double() < 0) {
          out = "-" + (-c).to_string() + "*";
          start = 1;
        }
      }
      for (std::size_t k = start; k < f.size(); ++k) {
        if (k > start) out += "*";
        out += wrap(f[k], 3);
      }
      return out;
    }
    case Expr::Kind::kPow: {
      const Scalar& k = h.exponent();
      std::string exponent = k.to_string();
      bool plain = k.is_rational() && is_integer(k.rational()) && k.to_double() >= 0;
      return wrap(h.args()[0], 4) + "^" + (plain ? exponent : "(" + exponent + ")");
    }
    case Expr::Kind::kLnAbs:
      return "ln|" + print(h.args()[0]) + "|";
    case Expr::Kind::kExp:
      return "exp(" + print(h.args()[0]) + ")";
  }
  return "?";
}

std::string wrap(const Expr& h, int min_prec) {
  std::string s = print(h);
  return precedence(h) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

std::string to_string(const Expr& h) { return print(h); }

}  // namespace lvfi
