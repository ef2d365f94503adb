// Copyright 2026 The coxroot Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coxroot/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <regex>
#include <stdexcept>

#include "coxroot/error.hpp"

namespace coxroot {

namespace {

const std::regex& integer_re() {
  static const std::regex re(R"(^[+-]?\d+$)");
  return re;
}
const std::regex& rational_re() {
  static const std::regex re(R"(^([+-]?\d+)/(\d+)$)");
  return re;
}
const std::regex& decimal_re() {
  static const std::regex re(R"(^([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?$)");
  return re;
}

// Accepts the typographic minus sign U+2212 as an ASCII '-'.
std::string normalize_literal(std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (std::size_t k = 0; k < text.size(); ++k) {
    const auto c = static_cast<unsigned char>(text[k]);
    if (c == 0xE2 && k + 2 < text.size() &&
        static_cast<unsigned char>(text[k + 1]) == 0x88 &&
        static_cast<unsigned char>(text[k + 2]) == 0x92) {
      s.push_back('-');
      k += 2;
    } else if (!std::isspace(c)) {
      s.push_back(static_cast<char>(c));
    }
  }
  return s;
}

[[noreturn]] void syntax_error(std::string_view text, const char* why) {
  throw Error(ErrorCode::ValueSyntaxError,
              std::string("invalid scalar \"") + std::string(text) + "\": " + why);
}

mpq_class pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return mpq_class(p);
  mpq_class q(mpz_class(1), p);
  q.canonicalize();
  return q;
}

std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = std::hash<int>{}(mpz_sgn(z.get_mpz_t()));
  const std::size_t limbs = mpz_size(z.get_mpz_t());
  for (std::size_t k = 0; k < limbs; ++k) {
    h ^= std::hash<mp_limb_t>{}(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(k))) +
         0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace

Scalar::Scalar(mpq_class q) : value_(std::move(q)) {
  std::get<mpq_class>(value_).canonicalize();
}

Scalar Scalar::ratio(long p, long q) {
  if (q == 0) throw std::domain_error("zero denominator");
  mpq_class r(p, q);
  r.canonicalize();
  return Scalar(std::move(r));
}

Scalar Scalar::real(double v, double eps) {
  Scalar s;
  s.value_ = v;
  s.eps_ = eps;
  return s;
}

bool Scalar::is_rational_literal(std::string_view text) {
  const std::string s = normalize_literal(text);
  return std::regex_match(s, integer_re()) || std::regex_match(s, rational_re());
}

Scalar Scalar::parse(std::string_view text, NumericMode mode, double eps) {
  const std::string s = normalize_literal(text);
  if (s.empty()) syntax_error(text, "empty");

  mpq_class value;
  std::smatch m;
  if (std::regex_match(s, integer_re())) {
    value = mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
  } else if (std::regex_match(s, m, rational_re())) {
    const std::string num = m[1].str();
    const mpz_class den(m[2].str(), 10);
    if (den == 0) syntax_error(text, "zero denominator");
    value = mpq_class(mpz_class(num[0] == '+' ? num.substr(1) : num, 10), den);
    value.canonicalize();
  } else if (std::regex_match(s, m, decimal_re()) && (m[2].length() + m[3].length()) > 0) {
    const std::string digits = m[2].str() + m[3].str();
    long exponent = m[4].matched ? std::stol(m[4].str()) : 0;
    exponent -= static_cast<long>(m[3].length());
    value = mpq_class(mpz_class(digits, 10)) * pow10(exponent);
    if (m[1].str() == "-") value = -value;
    value.canonicalize();
  } else {
    syntax_error(text, "not an integer, rational or decimal");
  }

  if (mode == NumericMode::exact) return Scalar(std::move(value));
  // Floating: parse decimals with strtod so the nearest double is used.
  const bool is_decimal = !std::regex_match(s, integer_re()) && !std::regex_match(s, rational_re());
  const double d = is_decimal ? std::strtod(s.c_str(), nullptr) : value.get_d();
  return Scalar::real(d, eps);
}

double Scalar::to_double() const {
  if (is_exact()) return rational().get_d();
  return std::get<double>(value_);
}

Scalar Scalar::in_mode(NumericMode mode, double eps) const {
  if (mode == NumericMode::floating) {
    return Scalar::real(to_double(), is_exact() ? eps : std::max(eps, eps_));
  }
  return *this;
}

int Scalar::sign() const {
  if (is_exact()) return sgn(rational());
  const double d = std::get<double>(value_);
  if (std::abs(d) <= eps_) return 0;
  return d > 0 ? 1 : -1;
}

bool Scalar::is_integer() const {
  if (is_exact()) return rational().get_den() == 1;
  const double d = std::get<double>(value_);
  return std::abs(d - std::round(d)) <= eps_ * std::max(1.0, std::abs(d));
}

Scalar Scalar::abs() const { return sign() < 0 ? -*this : *this; }

std::string Scalar::to_string() const {
  if (is_exact()) return rational().get_str();
  char buf[64];
  double d = std::get<double>(value_);
  if (d == 0.0) d = 0.0;  // drop negative zero
  std::snprintf(buf, sizeof buf, "%.12g", d);
  return buf;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<mpq_class>(value_) += o.rational();
  } else {
    const double eps = std::max(eps_, o.eps_);
    value_ = to_double() + o.to_double();
    eps_ = eps;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<mpq_class>(value_) -= o.rational();
  } else {
    const double eps = std::max(eps_, o.eps_);
    value_ = to_double() - o.to_double();
    eps_ = eps;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<mpq_class>(value_) *= o.rational();
  } else {
    const double eps = std::max(eps_, o.eps_);
    value_ = to_double() * o.to_double();
    eps_ = eps;
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_exact() ? sgn(o.rational()) == 0 : o.to_double() == 0.0) {
    throw std::domain_error("division by zero");
  }
  if (is_exact() && o.is_exact()) {
    std::get<mpq_class>(value_) /= o.rational();
  } else {
    const double eps = std::max(eps_, o.eps_);
    value_ = to_double() / o.to_double();
    eps_ = eps;
  }
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (r.is_exact()) {
    std::get<mpq_class>(r.value_) = -rational();
  } else {
    std::get<double>(r.value_) = -std::get<double>(value_);
  }
  return r;
}

int compare(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    const int c = cmp(a.rational(), b.rational());
    return (c > 0) - (c < 0);
  }
  const double x = a.to_double();
  const double y = b.to_double();
  const double eps = std::max(a.eps_, b.eps_);
  if (std::abs(x - y) <= eps * std::max({1.0, std::abs(x), std::abs(y)})) return 0;
  return x < y ? -1 : 1;
}

std::size_t Scalar::hash() const {
  if (!is_exact()) return 0x5bd1e995;
  const mpq_class& q = rational();
  return hash_mpz(q.get_num()) * 31 + hash_mpz(q.get_den());
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace coxroot
