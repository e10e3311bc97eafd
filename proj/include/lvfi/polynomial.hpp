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

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lvfi/rational.hpp"

namespace lvfi {

namespace detail {
inline Rational exponent_as_rational(int e) { return Rational(e); }
inline Rational exponent_as_rational(const Rational& e) { return e; }
inline long exponent_as_integer(int e) { return e; }
inline long exponent_as_integer(const Rational& e) {
  if (!is_integer(e)) throw std::domain_error("non-integer exponent");
  return numerator(e).convert_to<long>();
}
inline std::string exponent_text(int e) {
  return e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e);
}
inline std::string exponent_text(const Rational& e) {
  if (is_integer(e) && e >= 0) return to_string(e);
  return "(" + to_string(e) + ")";
}
}  // namespace detail

// Sparse multivariate polynomial with rational coefficients. Exponents are
// `int` for Laurent polynomials (negative powers allowed) and `Rational` for
// Puiseux-type sums with fractional powers. Zero coefficients are never
// stored and terms are kept in lexicographic exponent order.
template <typename Exp>
class Polynomial {
 public:
  using Exponents = std::vector<Exp>;
  using Terms = std::map<Exponents, Rational>;

  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(Exponents(nvars, Exp(0)), c);
    return p;
  }
  static Polynomial variable(int nvars, int i, Exp power = Exp(1)) {
    Exponents e(nvars, Exp(0));
    e[i] = power;
    return monomial(std::move(e), Rational(1));
  }
  static Polynomial monomial(Exponents e, const Rational& c) {
    Polynomial p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
  }

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  bool is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    for (const Exp& x : terms_.begin()->first) {
      if (x != Exp(0)) return false;
    }
    return true;
  }
  Rational constant_term() const { return coefficient(Exponents(nvars_, Exp(0))); }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Exponents& e, const Rational& c) {
    if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("arity mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& kv : terms_) kv.second *= s;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial out(a.nvars_);
    Exponents e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial derivative(int i) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == Exp(0)) continue;
      Exponents d = e;
      d[i] = d[i] - Exp(1);
      out.add_term(d, c * detail::exponent_as_rational(e[i]));
    }
    return out;
  }

  Polynomial pow(unsigned k) const {
    Polynomial result = constant(nvars_, Rational(1));
    Polynomial base = *this;
    while (k > 0) {
      if (k & 1u) result *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return result;
  }

  // Multiply by the monomial x^shift.
  Polynomial shifted(const Exponents& shift) const {
    Polynomial out(nvars_);
    Exponents e(nvars_);
    for (const auto& [ee, c] : terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = ee[i] + shift[i];
      out.terms_.emplace(e, c);
    }
    return out;
  }

  // Replace variable i by a rational value; its exponents must be integers.
  Polynomial substitute(int i, const Rational& value) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
      Exponents r = e;
      r[i] = Exp(0);
      out.add_term(r, c * lvfi::pow(value, detail::exponent_as_integer(e[i])));
    }
    return out;
  }

  Rational evaluate(const std::vector<Rational>& x) const {
    Rational total(0);
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] != Exp(0)) t *= lvfi::pow(x[i], detail::exponent_as_integer(e[i]));
      }
      total += t;
    }
    return total;
  }

  double evaluate(const std::vector<double>& x) const {
    double total = 0.0;
    for (const auto& [e, c] : terms_) {
      double t = to_double(c);
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] != Exp(0)) t *= std::pow(x[i], to_double(detail::exponent_as_rational(e[i])));
      }
      total += t;
    }
    return total;
  }

  // Groups terms by the exponents of the first k variables. Each value is a
  // polynomial in the remaining nvars - k variables.
  std::map<Exponents, Polynomial> collect(int k) const {
    std::map<Exponents, Polynomial> out;
    for (const auto& [e, c] : terms_) {
      Exponents head(e.begin(), e.begin() + k);
      Exponents tail(e.begin() + k, e.end());
      auto it = out.try_emplace(head, Polynomial(nvars_ - k)).first;
      it->second.add_term(tail, c);
    }
    return out;
  }

  // Same terms viewed in a ring with more variables appended at the end.
  Polynomial extended(int new_nvars) const {
    Polynomial out(new_nvars);
    for (const auto& [e, c] : terms_) {
      Exponents x = e;
      x.resize(new_nvars, Exp(0));
      out.terms_.emplace(std::move(x), c);
    }
    return out;
  }

  // Drops trailing variables, which must not occur.
  Polynomial truncated(int new_nvars) const {
    Polynomial out(new_nvars);
    for (const auto& [e, c] : terms_) {
      for (int i = new_nvars; i < nvars_; ++i) {
        if (e[i] != Exp(0)) throw std::invalid_argument("variable still present");
      }
      out.terms_.emplace(Exponents(e.begin(), e.begin() + new_nvars), c);
    }
    return out;
  }

  bool depends_on(int i) const {
    for (const auto& kv : terms_) {
      if (kv.first[i] != Exp(0)) return true;
    }
    return false;
  }

  Exp max_exponent(int i) const {
    bool first = true;
    Exp m(0);
    for (const auto& kv : terms_) {
      if (first || kv.first[i] > m) m = kv.first[i];
      first = false;
    }
    return m;
  }

  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    // Higher-degree terms first reads more naturally.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rational mag = c < 0 ? Rational(-c) : c;
      if (first) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      first = false;
      std::string factors;
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] == Exp(0)) continue;
        if (!factors.empty()) factors += "*";
        factors += names.at(i);
        if (e[i] != Exp(1)) factors += "^" + detail::exponent_text(e[i]);
      }
      if (factors.empty()) {
        out += lvfi::to_string(mag);
      } else if (mag == 1) {
        out += factors;
      } else {
        out += lvfi::to_string(mag) + "*" + factors;
      }
    }
    return out;
  }

 private:
  void check(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("arity mismatch");
  }

  int nvars_ = 0;
  Terms terms_;
};

using LaurentPoly = Polynomial<int>;
using PuiseuxPoly = Polynomial<Rational>;

inline PuiseuxPoly to_puiseux(const LaurentPoly& p) {
  PuiseuxPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    PuiseuxPoly::Exponents x(e.begin(), e.end());
    out.add_term(x, c);
  }
  return out;
}

// Converts when every exponent is an integer.
inline std::optional<LaurentPoly> to_laurent(const PuiseuxPoly& p) {
  LaurentPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    LaurentPoly::Exponents x;
    for (const Rational& r : e) {
      if (!is_integer(r)) return std::nullopt;
      x.push_back(numerator(r).convert_to<int>());
    }
    out.add_term(x, c);
  }
  return out;
}

}  // namespace lvfi
