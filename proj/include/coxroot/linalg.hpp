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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "coxroot/scalar.hpp"

namespace coxroot {

using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

enum class Sign { positive, negative, mixed, zero };

/// Sign classification of a coefficient vector: positive iff every entry is
/// >= 0 and some entry is > 0, negative symmetrically.
template <typename Derived>
Sign sign_of(const Eigen::MatrixBase<Derived>& v) {
  bool has_pos = false;
  bool has_neg = false;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const int s = v(k).sign();
    has_pos |= s > 0;
    has_neg |= s < 0;
  }
  if (has_pos && has_neg) return Sign::mixed;
  if (has_pos) return Sign::positive;
  if (has_neg) return Sign::negative;
  return Sign::zero;
}

template <typename Derived>
bool is_positive(const Eigen::MatrixBase<Derived>& v) {
  return sign_of(v) == Sign::positive;
}

template <typename Derived>
bool is_negative(const Eigen::MatrixBase<Derived>& v) {
  return sign_of(v) == Sign::negative;
}

/// Index of the only nonzero coordinate, if there is exactly one.
template <typename Derived>
std::optional<int> single_support(const Eigen::MatrixBase<Derived>& v) {
  std::optional<int> found;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (v(k).is_zero()) continue;
    if (found) return std::nullopt;
    found = static_cast<int>(k);
  }
  return found;
}

template <typename DerivedA, typename DerivedB>
bool approx_equal(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      if (a(r, c) != b(r, c)) return false;
  return true;
}

/// If b = c * a for some c > 0, returns c.
std::optional<Scalar> positive_ratio(const Vector& a, const Vector& b);

Vector zero_vector(int n);
Vector unit_vector(int n, int i);
Vector ones_vector(int n);

/// Converts every entry into the given mode (exact -> floating).
Vector in_mode(const Vector& v, NumericMode mode, double eps);

/// Row-reduction rank; tolerance-aware for floating entries.
int rank(Matrix m);

/// Hash over exact coordinates (floating entries contribute a constant).
struct VectorHash {
  std::size_t operator()(const Vector& v) const;
};

/// Exact coordinate equality, the companion of VectorHash.
struct VectorExactEqual {
  bool operator()(const Vector& a, const Vector& b) const;
};

std::string to_string(const Vector& v);

enum class Relation { greater_equal, equal, less_equal };

/// Phase-one simplex: is there x >= 0 with row_k(A) x (rel_k) b_k for all k?
/// Runs over Scalar with Bland's rule, so it terminates in exact mode and
/// honors the tolerance rule in floating mode.
bool feasible(const Matrix& a, const Vector& b, std::span<const Relation> relations);

}  // namespace coxroot
