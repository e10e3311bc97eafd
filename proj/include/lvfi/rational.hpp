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

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace lvfi {

// Arbitrary precision rational backed by GMP. Expression templates are
// disabled so values compose cleanly inside Eigen containers.
using Rational = boost::multiprecision::number<
    boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<
    boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

// Parses "p", "p/q", "-p/q", or a plain decimal literal such as "0.25" or
// "1e-3" into an exact canonical rational. Returns nullopt on malformed input
// or a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

// Exact value of a finite binary64 number.
Rational rational_from_double(double value);

double to_double(const Rational& r);

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

bool is_integer(const Rational& r);

inline bool is_zero(const Rational& r) { return r.is_zero(); }

// r^k for integer k; k < 0 requires r != 0.
Rational pow(const Rational& r, long k);

}  // namespace lvfi
