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

#include "coxroot/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace coxroot {

std::optional<Scalar> positive_ratio(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::optional<Scalar> ratio;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const bool za = a(k).is_zero();
    const bool zb = b(k).is_zero();
    if (za != zb) return std::nullopt;
    if (za) continue;
    Scalar r = b(k) / a(k);
    if (!ratio) {
      if (r.sign() <= 0) return std::nullopt;
      ratio = r;
    } else if (*ratio != r) {
      return std::nullopt;
    }
  }
  return ratio;
}

Vector zero_vector(int n) { return Vector::Constant(n, Scalar(0)); }

Vector unit_vector(int n, int i) {
  Vector v = zero_vector(n);
  v(i) = Scalar(1);
  return v;
}

Vector ones_vector(int n) { return Vector::Constant(n, Scalar(1)); }

Vector in_mode(const Vector& v, NumericMode mode, double eps) {
  Vector r(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) r(k) = v(k).in_mode(mode, eps);
  return r;
}

int rank(Matrix m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  int r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index k = r; k < rows; ++k) {
      if (!m(k, c).is_zero() &&
          (pivot < 0 || m(k, c).abs().to_double() > m(pivot, c).abs().to_double())) {
        pivot = k;
      }
    }
    if (pivot < 0) continue;
    m.row(r).swap(m.row(pivot));
    for (Eigen::Index k = r + 1; k < rows; ++k) {
      if (m(k, c).is_zero()) continue;
      const Scalar f = m(k, c) / m(r, c);
      for (Eigen::Index j = c; j < cols; ++j) m(k, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

std::size_t VectorHash::operator()(const Vector& v) const {
  std::size_t h = static_cast<std::size_t>(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    h ^= v(k).hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

bool VectorExactEqual::operator()(const Vector& a, const Vector& b) const {
  return approx_equal(a, b);
}

std::string to_string(const Vector& v) {
  std::string s = "(";
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (k) s += ", ";
    s += v(k).to_string();
  }
  return s + ")";
}

bool feasible(const Matrix& a, const Vector& b, std::span<const Relation> relations) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (b.size() != m || static_cast<Eigen::Index>(relations.size()) != m) {
    throw std::invalid_argument("feasible: dimension mismatch");
  }

  // Columns: [x (n) | slacks (one per inequality) | artificials (m) | rhs].
  std::vector<Eigen::Index> slack_col(static_cast<std::size_t>(m), -1);
  Eigen::Index slacks = 0;
  for (Eigen::Index k = 0; k < m; ++k) {
    if (relations[static_cast<std::size_t>(k)] != Relation::equal) slack_col[static_cast<std::size_t>(k)] = n + slacks++;
  }
  const Eigen::Index art0 = n + slacks;
  const Eigen::Index vars = art0 + m;
  Matrix t = Matrix::Constant(m + 1, vars + 1, Scalar(0));

  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) t(k, j) = a(k, j);
    t(k, vars) = b(k);
    const Relation rel = relations[static_cast<std::size_t>(k)];
    if (rel == Relation::greater_equal) t(k, slack_col[static_cast<std::size_t>(k)]) = Scalar(-1);
    if (rel == Relation::less_equal) t(k, slack_col[static_cast<std::size_t>(k)]) = Scalar(1);
    if (t(k, vars).sign() < 0) {
      for (Eigen::Index j = 0; j <= vars; ++j) t(k, j) = -t(k, j);
    }
    t(k, art0 + k) = Scalar(1);
  }
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index k = 0; k < m; ++k) basis[static_cast<std::size_t>(k)] = art0 + k;

  // Objective row: minimize the sum of artificials, priced out.
  for (Eigen::Index j = 0; j <= vars; ++j) {
    if (j >= art0 && j < vars) continue;
    Scalar s(0);
    for (Eigen::Index k = 0; k < m; ++k) s -= t(k, j);
    t(m, j) = s;
  }

  for (int iter = 0; iter < 100000; ++iter) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < vars; ++j) {
      if (t(m, j).sign() < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    Scalar best;
    for (Eigen::Index k = 0; k < m; ++k) {
      if (t(k, enter).sign() <= 0) continue;
      Scalar ratio = t(k, vars) / t(k, enter);
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[static_cast<std::size_t>(k)] < basis[static_cast<std::size_t>(leave)])) {
        leave = k;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction; cannot happen in phase one

    const Scalar pivot = t(leave, enter);
    for (Eigen::Index j = 0; j <= vars; ++j) t(leave, j) /= pivot;
    for (Eigen::Index k = 0; k <= m; ++k) {
      if (k == leave || t(k, enter).is_zero()) continue;
      const Scalar f = t(k, enter);
      for (Eigen::Index j = 0; j <= vars; ++j) t(k, j) -= f * t(leave, j);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }
  // The objective entry holds minus the residual artificial mass.
  return t(m, vars).is_zero();
}

}  // namespace coxroot
