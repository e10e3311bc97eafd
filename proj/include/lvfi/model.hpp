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

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "lvfi/rational.hpp"

namespace lvfi {

// Malformed or inconsistent user input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScalarKind { kRational, kFloat };

// Either an exact rational or a finite binary64 value.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(Rational r) : value_(std::move(r)) {}  // NOLINT
  Scalar(int v) : value_(Rational(v)) {}        // NOLINT
  static Scalar from_double(double v);

  ScalarKind kind() const {
    return std::holds_alternative<Rational>(value_) ? ScalarKind::kRational
                                                    : ScalarKind::kFloat;
  }
  bool is_rational() const { return kind() == ScalarKind::kRational; }
  const Rational& rational() const { return std::get<Rational>(value_); }
  double to_double() const;
  bool is_zero() const;
  bool is_one() const;
  std::string to_string() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.value_ == b.value_;
  }

 private:
  std::variant<Rational, double> value_;
};

// x_i' = x_i (b_i + sum_j a_ij x_j) + e_i, stored with Eigen containers over
// an arbitrary scalar type.
template <typename S>
struct LotkaVolterra {
  using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

  Vector b;
  Matrix A;
  Vector e;

  LotkaVolterra() = default;
  explicit LotkaVolterra(int dim)
      : b(Vector::Zero(dim)), A(Matrix::Zero(dim, dim)), e(Vector::Zero(dim)) {}

  int dim() const { return static_cast<int>(b.size()); }

  template <typename Derived>
  Vector field(const Eigen::MatrixBase<Derived>& x) const {
    Vector rate = b + A * x;
    return (x.array() * rate.array()).matrix() + e;
  }

  template <typename T>
  LotkaVolterra<T> cast() const {
    LotkaVolterra<T> out;
    out.b = b.template cast<T>();
    out.A = A.template cast<T>();
    out.e = e.template cast<T>();
    return out;
  }

  friend bool operator==(const LotkaVolterra& x, const LotkaVolterra& y) {
    return x.dim() == y.dim() && x.b == y.b && x.A == y.A && x.e == y.e;
  }
};

using ExactSystem = LotkaVolterra<Rational>;
using FloatSystem = LotkaVolterra<double>;

// A bijection on {0, .., n-1}. Applying it to a system relabels coordinates
// so that new coordinate i is old coordinate sigma(i).
class Permutation {
 public:
  explicit Permutation(std::vector<int> sigma);
  static Permutation identity(int n);
  static std::vector<Permutation> all(int n);

  int size() const { return static_cast<int>(sigma_.size()); }
  int operator()(int i) const { return sigma_[i]; }
  const std::vector<int>& images() const { return sigma_; }
  Permutation inverse() const;
  bool is_identity() const;
  // One-based cycle-free listing, e.g. "(1,3,2)".
  std::string to_string() const;

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.sigma_ == b.sigma_;
  }
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return a.sigma_ < b.sigma_;
  }

 private:
  std::vector<int> sigma_;
};

// i -> p(q(i)); permute(permute(s, p), q) == permute(s, compose(p, q)).
Permutation compose(const Permutation& p, const Permutation& q);

// The system under analysis. Float input is kept as given and also lifted to
// its exact rational value for the exact decision procedures.
class LVSystem {
 public:
  static LVSystem exact(ExactSystem s);
  static LVSystem floating(FloatSystem s);

  int dim() const { return exact_.dim(); }
  ScalarKind kind() const { return kind_; }
  const ExactSystem& exact() const { return exact_; }
  const FloatSystem& numeric() const { return numeric_; }

  Scalar b(int i) const;
  Scalar a(int i, int j) const;
  Scalar e(int i) const;

  friend bool operator==(const LVSystem& x, const LVSystem& y);

 private:
  LVSystem(ScalarKind kind, ExactSystem exact, FloatSystem numeric);

  ScalarKind kind_;
  ExactSystem exact_;
  FloatSystem numeric_;
};

LVSystem parse_system(std::string_view json_text);
std::string serialize_system(const LVSystem& s);
LVSystem permute_system(const LVSystem& s, const Permutation& p);
ExactSystem permute_system(const ExactSystem& s, const Permutation& p);

}  // namespace lvfi
