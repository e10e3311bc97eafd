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

#include "lvfi/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace lvfi {

Scalar Scalar::from_double(double v) {
  if (!std::isfinite(v)) throw InputError("non-finite value");
  Scalar s;
  s.value_ = v;
  return s;
}

double Scalar::to_double() const {
  if (is_rational()) return lvfi::to_double(rational());
  return std::get<double>(value_);
}

bool Scalar::is_zero() const {
  return is_rational() ? rational().is_zero() : std::get<double>(value_) == 0.0;
}

bool Scalar::is_one() const {
  return is_rational() ? rational() == 1 : std::get<double>(value_) == 1.0;
}

std::string Scalar::to_string() const {
  if (is_rational()) return lvfi::to_string(rational());
  std::ostringstream os;
  os.precision(17);
  os << std::get<double>(value_);
  return os.str();
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) return Scalar(a.rational() + b.rational());
  return Scalar::from_double(a.to_double() + b.to_double());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) return Scalar(a.rational() * b.rational());
  return Scalar::from_double(a.to_double() * b.to_double());
}

Scalar operator-(const Scalar& a) {
  if (a.is_rational()) return Scalar(Rational(-a.rational()));
  return Scalar::from_double(-a.to_double());
}

Permutation::Permutation(std::vector<int> sigma) : sigma_(std::move(sigma)) {
  std::vector<int> sorted = sigma_;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
    if (sorted[i] != i) throw std::invalid_argument("not a permutation");
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> s(n);
  std::iota(s.begin(), s.end(), 0);
  return Permutation(std::move(s));
}

std::vector<Permutation> Permutation::all(int n) {
  std::vector<int> s(n);
  std::iota(s.begin(), s.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(s);
  } while (std::next_permutation(s.begin(), s.end()));
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(sigma_.size());
  for (int i = 0; i < size(); ++i) inv[sigma_[i]] = i;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i) {
    if (sigma_[i] != i) return false;
  }
  return true;
}

std::string Permutation::to_string() const {
  std::string out = "(";
  for (int i = 0; i < size(); ++i) {
    if (i) out += ",";
    out += std::to_string(sigma_[i] + 1);
  }
  return out + ")";
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw std::invalid_argument("dimension mismatch");
  std::vector<int> r(p.size());
  for (int i = 0; i < p.size(); ++i) r[i] = p(q(i));
  return Permutation(std::move(r));
}

LVSystem::LVSystem(ScalarKind kind, ExactSystem exact, FloatSystem numeric)
    : kind_(kind), exact_(std::move(exact)), numeric_(std::move(numeric)) {
  int n = exact_.dim();
  if (n != 2 && n != 3) throw InputError("dimension must be 2 or 3");
  if (exact_.A.rows() != n || exact_.A.cols() != n || exact_.e.size() != n)
    throw InputError("dimension mismatch");
}

LVSystem LVSystem::exact(ExactSystem s) {
  FloatSystem f = s.cast<double>();
  return LVSystem(ScalarKind::kRational, std::move(s), std::move(f));
}

LVSystem LVSystem::floating(FloatSystem s) {
  ExactSystem x(s.dim());
  if (s.A.rows() != s.dim() || s.A.cols() != s.dim() || s.e.size() != s.dim())
    throw InputError("dimension mismatch");
  for (int i = 0; i < s.dim(); ++i) {
    x.b(i) = rational_from_double(s.b(i));
    x.e(i) = rational_from_double(s.e(i));
    for (int j = 0; j < s.dim(); ++j) x.A(i, j) = rational_from_double(s.A(i, j));
  }
  return LVSystem(ScalarKind::kFloat, std::move(x), std::move(s));
}

Scalar LVSystem::b(int i) const {
  return kind_ == ScalarKind::kRational ? Scalar(exact_.b(i))
                                        : Scalar::from_double(numeric_.b(i));
}

Scalar LVSystem::a(int i, int j) const {
  return kind_ == ScalarKind::kRational ? Scalar(exact_.A(i, j))
                                        : Scalar::from_double(numeric_.A(i, j));
}

Scalar LVSystem::e(int i) const {
  return kind_ == ScalarKind::kRational ? Scalar(exact_.e(i))
                                        : Scalar::from_double(numeric_.e(i));
}

bool operator==(const LVSystem& x, const LVSystem& y) {
  if (x.kind_ != y.kind_ || x.dim() != y.dim()) return false;
  if (x.kind_ == ScalarKind::kFloat) {
    return x.numeric_.b == y.numeric_.b && x.numeric_.A == y.numeric_.A &&
           x.numeric_.e == y.numeric_.e;
  }
  return x.exact_.b == y.exact_.b && x.exact_.A == y.exact_.A &&
         x.exact_.e == y.exact_.e;
}

namespace {

using nlohmann::json;

// A parsed entry; integers are compatible with both kinds.
struct Entry {
  Rational exact;
  double value = 0.0;
  enum class Tag { kInteger, kRational, kFloat } tag = Tag::kInteger;
};

Entry parse_entry(const json& j, const std::string& where) {
  Entry out;
  if (j.is_number_integer()) {
    out.exact = j.is_number_unsigned() ? Rational(Integer(j.get<std::uint64_t>()))
                                       : Rational(Integer(j.get<std::int64_t>()));
    out.value = to_double(out.exact);
    out.tag = Entry::Tag::kInteger;
    return out;
  }
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (!std::isfinite(v)) throw InputError("non-finite value at " + where);
    out.value = v;
    out.exact = rational_from_double(v);
    out.tag = Entry::Tag::kFloat;
    return out;
  }
  if (j.is_string()) {
    std::string text = j.get<std::string>();
    bool looks_rational = text.find('/') != std::string::npos ||
                          text.find_first_of(".eE") == std::string::npos;
    auto r = parse_rational(text);
    if (!r) throw InputError("malformed number '" + text + "' at " + where);
    out.exact = *r;
    if (looks_rational) {
      out.tag = text.find('/') != std::string::npos ? Entry::Tag::kRational
                                                    : Entry::Tag::kInteger;
      out.value = to_double(out.exact);
    } else {
      out.tag = Entry::Tag::kFloat;
      out.value = std::stod(text);
      if (!std::isfinite(out.value))
        throw InputError("non-finite value at " + where);
      out.exact = rational_from_double(out.value);
    }
    return out;
  }
  throw InputError("expected a number at " + where);
}

std::vector<Entry> parse_vector(const json& doc, const char* key, int n) {
  if (!doc.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  const json& arr = doc.at(key);
  if (!arr.is_array()) throw InputError(std::string("field '") + key + "' must be an array");
  if (static_cast<int>(arr.size()) != n)
    throw InputError(std::string("dimension mismatch in '") + key + "'");
  std::vector<Entry> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(parse_entry(arr[i], std::string(key) + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

LVSystem parse_system(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& ex) {
    throw InputError(std::string("malformed JSON: ") + ex.what());
  }
  if (!doc.is_object()) throw InputError("system must be a JSON object");
  if (!doc.contains("dim") || !doc.at("dim").is_number_integer())
    throw InputError("missing integer field 'dim'");
  int n = doc.at("dim").get<int>();
  if (n != 2 && n != 3) throw InputError("dim must be 2 or 3");

  std::vector<Entry> b = parse_vector(doc, "b", n);
  std::vector<Entry> e = parse_vector(doc, "e", n);
  if (!doc.contains("A") || !doc.at("A").is_array())
    throw InputError("missing array field 'A'");
  const json& rows = doc.at("A");
  if (static_cast<int>(rows.size()) != n) throw InputError("dimension mismatch in 'A'");
  std::vector<Entry> a;
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
      throw InputError("dimension mismatch in 'A'");
    for (int j = 0; j < n; ++j) {
      a.push_back(parse_entry(rows[i][j], "A[" + std::to_string(i) + "][" +
                                              std::to_string(j) + "]"));
    }
  }

  bool any_float = false;
  bool any_rational = false;
  for (const auto* group : {&b, &a, &e}) {
    for (const Entry& x : *group) {
      any_float |= x.tag == Entry::Tag::kFloat;
      any_rational |= x.tag == Entry::Tag::kRational;
    }
  }
  if (any_float && any_rational)
    throw InputError("mixed rational and float entries");

  if (any_float) {
    FloatSystem s(n);
    for (int i = 0; i < n; ++i) {
      s.b(i) = b[i].value;
      s.e(i) = e[i].value;
      for (int j = 0; j < n; ++j) s.A(i, j) = a[i * n + j].value;
    }
    return LVSystem::floating(std::move(s));
  }
  ExactSystem s(n);
  for (int i = 0; i < n; ++i) {
    s.b(i) = b[i].exact;
    s.e(i) = e[i].exact;
    for (int j = 0; j < n; ++j) s.A(i, j) = a[i * n + j].exact;
  }
  return LVSystem::exact(std::move(s));
}

std::string serialize_system(const LVSystem& s) {
  int n = s.dim();
  auto entry = [&](const Scalar& x) -> json {
    if (x.is_rational()) return lvfi::to_string(x.rational());
    return x.to_double();
  };
  json b = json::array(), e = json::array(), A = json::array();
  for (int i = 0; i < n; ++i) {
    b.push_back(entry(s.b(i)));
    e.push_back(entry(s.e(i)));
    json row = json::array();
    for (int j = 0; j < n; ++j) row.push_back(entry(s.a(i, j)));
    A.push_back(row);
  }
  json doc = {{"dim", n}, {"b", b}, {"A", A}, {"e", e}};
  return doc.dump();
}

template <typename S>
static LotkaVolterra<S> permute_impl(const LotkaVolterra<S>& s, const Permutation& p) {
  if (p.size() != s.dim()) throw std::invalid_argument("dimension mismatch");
  LotkaVolterra<S> out(s.dim());
  for (int i = 0; i < s.dim(); ++i) {
    out.b(i) = s.b(p(i));
    out.e(i) = s.e(p(i));
    for (int j = 0; j < s.dim(); ++j) out.A(i, j) = s.A(p(i), p(j));
  }
  return out;
}

ExactSystem permute_system(const ExactSystem& s, const Permutation& p) {
  return permute_impl(s, p);
}

LVSystem permute_system(const LVSystem& s, const Permutation& p) {
  if (s.kind() == ScalarKind::kFloat) {
    return LVSystem::floating(permute_impl(s.numeric(), p));
  }
  return LVSystem::exact(permute_impl(s.exact(), p));
}

}  // namespace lvfi
