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

#include "lvfi/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace lvfi {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::optional<Integer> parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) return std::nullopt;
  Integer value{std::string(s)};
  return negative ? Integer(-value) : value;
}

// Decimal literal: [sign] digits [. digits] [e|E [sign] digits]
std::optional<Rational> parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view mantissa = s;
  long exponent = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    mantissa = s.substr(0, epos);
    auto exp_part = s.substr(epos + 1);
    auto e = parse_integer(exp_part);
    if (!e || abs(*e) > 4000) return std::nullopt;
    exponent = e->convert_to<long>();
  }
  std::string digits;
  auto dot = mantissa.find('.');
  if (dot == std::string_view::npos) {
    if (!all_digits(mantissa)) return std::nullopt;
    digits = std::string(mantissa);
  } else {
    auto whole = mantissa.substr(0, dot);
    auto frac = mantissa.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if ((!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      return std::nullopt;
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  }
  if (digits.empty()) return std::nullopt;
  Rational value{Integer(digits)};
  value *= pow(Rational(10), exponent);
  return negative ? Rational(-value) : value;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  auto num = parse_integer(text.substr(0, slash));
  auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text.front() == '+') return std::nullopt;
  auto den = parse_integer(den_text);
  if (!num || !den || den->is_zero()) return std::nullopt;
  // Building from two integers canonicalizes the fraction.
  return Rational(*num, *den);
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("non-finite value");
  // The gmp backend converts binary64 exactly.
  return Rational(value);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

Rational pow(const Rational& r, long k) {
  if (k < 0) {
    if (r.is_zero()) throw std::domain_error("zero to a negative power");
    return Rational(1) / pow(r, -k);
  }
  Rational result(1);
  Rational base = r;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

}  // namespace lvfi
