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

#include "lvfi/formula.hpp"

#include <cctype>

namespace lvfi {

ParamSpace::ParamSpace(int dim) : dim_(dim) {
  auto idx = [](int i) { return std::to_string(i + 1); };
  for (int i = 0; i < dim; ++i) names_.push_back("b" + idx(i));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) names_.push_back("a" + idx(i) + idx(j));
  }
  for (int i = 0; i < dim; ++i) names_.push_back("e" + idx(i));
  names_.push_back("alpha");
  names_.push_back("beta");
  names_.push_back("gamma");
  for (int i = 0; i < dim; ++i) names_.push_back("l" + idx(i));
  names_.push_back("lam");
  for (std::size_t k = 0; k < names_.size(); ++k) index_.emplace(names_[k], static_cast<int>(k));
}

std::optional<int> ParamSpace::index(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Rational> ParamSpace::values(const ExactSystem& s) const {
  if (s.dim() != dim_) throw std::invalid_argument("dimension mismatch");
  std::vector<Rational> v(static_cast<std::size_t>(size()), Rational(0));
  for (int i = 0; i < dim_; ++i) {
    v[b(i)] = s.b(i);
    v[e(i)] = s.e(i);
    for (int j = 0; j < dim_; ++j) v[a(i, j)] = s.A(i, j);
  }
  return v;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Resolver& resolve) : text_(text), resolve_(resolve) {}

  Expr parse() {
    Expr e = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw FormulaError(what + " at offset " + std::to_string(pos_) + " in \"" +
                       std::string(text_) + "\"");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr sum() {
    std::vector<Expr> terms = {product()};
    for (;;) {
      if (accept("+")) {
        terms.push_back(product());
      } else if (accept("-")) {
        terms.push_back(-product());
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms.front() : Expr::add(std::move(terms));
  }

  Expr product() {
    std::vector<Expr> factors = {unary()};
    for (;;) {
      skip_space();
      if (text_.substr(pos_, 2) == "**") break;  // handled by power()
      if (accept("*")) {
        factors.push_back(unary());
      } else if (accept("/")) {
        factors.push_back(Expr::pow(unary(), Scalar(-1)));
      } else {
        break;
      }
    }
    return factors.size() == 1 ? factors.front() : Expr::mul(std::move(factors));
  }

  Expr unary() {
    if (accept("-")) return -unary();
    if (accept("+")) return unary();
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (accept("^") || accept("**")) {
      std::size_t at = pos_;
      Expr exponent = simplify(unary());
      if (!exponent.is_constant()) {
        pos_ = at;
        fail("exponent must be constant");
      }
      return Expr::pow(base, exponent.value());
    }
    return base;
  }

  Expr atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Expr e = sum();
      if (!accept(")")) fail("expected ')'");
      return e;
    }
    if (c == '|') {
      ++pos_;
      Expr e = sum();
      if (!accept("|")) fail("expected '|'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = identifier();
      if (name == "ln" || name == "log") {
        char open = peek();
        if (open != '(' && open != '|') fail("expected argument of ln");
        return Expr::ln_abs(atom());
      }
      if (name == "exp") {
        if (peek() != '(') fail("expected argument of exp");
        return Expr::exp(atom());
      }
      std::optional<Expr> value = resolve_(name);
      if (!value) fail("unknown name '" + name + "'");
      return *value;
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected character");
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr number() {
    std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits();
      } else {
        pos_ = save;
      }
    }
    auto value = parse_rational(text_.substr(start, pos_ - start));
    if (!value) fail("malformed number");
    return Expr::constant(Scalar(*value));
  }

  std::string_view text_;
  const Resolver& resolve_;
  std::size_t pos_ = 0;
};

std::optional<int> coordinate_index(std::string_view name, int dim) {
  if (name.size() == 2 && name[0] == 'x' && name[1] >= '1' && name[1] < '1' + dim) {
    return name[1] - '1';
  }
  return std::nullopt;
}

Resolver with_macros(Resolver base, int dim) {
  // Term-table entries only mention plain parameters, so one level suffices.
  Resolver plain = [base, dim](std::string_view name) -> std::optional<Expr> {
    if (auto x = coordinate_index(name, dim)) return Expr::var(*x);
    return base(name);
  };
  return [plain, dim](std::string_view name) -> std::optional<Expr> {
    if (auto v = plain(name)) return v;
    if (dim == 3) {
      if (auto text = term_table_formula(name)) return parse_formula(*text, plain);
    }
    return std::nullopt;
  };
}

}  // namespace

Expr parse_formula(std::string_view text, const Resolver& resolve) {
  return Parser(text, resolve).parse();
}

std::optional<std::string> term_table_formula(std::string_view name) {
  static const std::map<std::string, std::string, std::less<>> table = [] {
    std::map<std::string, std::string, std::less<>> t = {
        {"B1", "b1*alpha-b3*gamma"},
        {"B2", "b2*alpha+b3*beta"},
        {"B3", "b1*beta+b2*gamma"},
    };
    for (int i = 1; i <= 3; ++i) {
      std::string s = std::to_string(i);
      t["A1" + s] = "a1" + s + "*alpha-a3" + s + "*gamma";
      t["A2" + s] = "a2" + s + "*alpha+a3" + s + "*beta";
      t["A3" + s] = "a1" + s + "*beta+a2" + s + "*gamma";
    }
    return t;
  }();
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

Resolver symbolic_resolver(const ParamSpace& space) {
  return with_macros(
      [space](std::string_view name) -> std::optional<Expr> {
        if (auto k = space.index(name)) return Expr::var(space.dim() + *k);
        return std::nullopt;
      },
      space.dim());
}

Resolver coordinate_resolver(int dim) {
  return [dim](std::string_view name) -> std::optional<Expr> {
    if (auto x = coordinate_index(name, dim)) return Expr::var(*x);
    return std::nullopt;
  };
}

Resolver numeric_resolver(const ParamSpace& space, const std::vector<Rational>& values) {
  return with_macros(
      [space, values](std::string_view name) -> std::optional<Expr> {
        if (auto k = space.index(name)) return Expr::constant(Scalar(values.at(*k)));
        return std::nullopt;
      },
      space.dim());
}

}  // namespace lvfi
