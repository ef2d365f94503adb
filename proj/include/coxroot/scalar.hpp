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

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <Eigen/Core>

namespace coxroot {

enum class NumericMode { exact, floating };

inline constexpr double kDefaultTolerance = 1e-9;

/// Dual-mode number carrying every matrix entry, root coordinate and position
/// value.
///
/// An exact scalar holds an arbitrary-precision rational and compares without
/// tolerance. A floating scalar holds a double together with the tolerance of
/// the context it was created in; two values compare equal when
/// |a - b| <= eps * max(1, |a|, |b|). Mixed arithmetic promotes to floating and
/// keeps the larger tolerance.
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  Scalar(int v) : value_(mpq_class(v)) {}  // NOLINT: literals read naturally
  Scalar(long v) : value_(mpq_class(v)) {}  // NOLINT
  explicit Scalar(mpq_class q);

  /// Exact p/q; q must be nonzero.
  static Scalar ratio(long p, long q);
  static Scalar real(double v, double eps = kDefaultTolerance);

  /// Parses an integer ("-5"), a rational ("-1/5") or a decimal
  /// ("-0.809", "1e-3"). Decimals become exact rationals in exact mode.
  /// Throws Error{ValueSyntaxError} on malformed text or a zero denominator.
  static Scalar parse(std::string_view text, NumericMode mode,
                      double eps = kDefaultTolerance);

  /// True when the literal is an integer or p/q (no decimal point/exponent).
  static bool is_rational_literal(std::string_view text);

  bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }
  NumericMode mode() const {
    return is_exact() ? NumericMode::exact : NumericMode::floating;
  }
  double tolerance() const { return eps_; }

  /// Requires is_exact().
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  double to_double() const;

  /// Same value, converted into the given mode (exact -> floating only; a
  /// floating value asked to become exact is returned unchanged).
  Scalar in_mode(NumericMode mode, double eps) const;

  /// -1, 0 or +1; tolerance-aware in floating mode (|a| <= eps counts as 0).
  int sign() const;
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;

  Scalar abs() const;

  /// Integers print as "5", rationals as "p/q" in lowest terms, floating
  /// values with 12 significant digits.
  std::string to_string() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  /// Three-way comparison honoring the tolerance rule.
  friend int compare(const Scalar& a, const Scalar& b);

  friend bool operator==(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return compare(a, b) != 0; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return compare(a, b) <= 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return compare(a, b) > 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0; }

  /// Hash of an exact value; floating values hash to a constant (they are
  /// deduplicated by tolerance search, never by hashing).
  std::size_t hash() const;

 private:
  std::variant<mpq_class, double> value_;
  double eps_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace coxroot

namespace Eigen {

template <>
struct NumTraits<coxroot::Scalar> : GenericNumTraits<coxroot::Scalar> {
  using Real = coxroot::Scalar;
  using NonInteger = coxroot::Scalar;
  using Nested = coxroot::Scalar;
  using Literal = coxroot::Scalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 8
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
