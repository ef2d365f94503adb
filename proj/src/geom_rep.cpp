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

#include "coxroot/geom_rep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "coxroot/error.hpp"

namespace coxroot {

GroupWord GroupWord::from_application_order(std::vector<int> letters) {
  std::reverse(letters.begin(), letters.end());
  return GroupWord{std::move(letters), false};
}

std::vector<int> GroupWord::application_order() const {
  return {letters.rbegin(), letters.rend()};
}

GroupWord GroupWord::inverse() const {
  return GroupWord{{letters.rbegin(), letters.rend()}, reduced};
}

GroupWord operator*(const GroupWord& a, const GroupWord& b) {
  GroupWord r{a.letters, false};
  r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
  return r;
}

Vector simple_root(const EGCMGraph& g, int i) {
  g.check_node(i);
  Vector v = unit_vector(g.size(), i);
  return g.mode() == NumericMode::floating ? in_mode(v, NumericMode::floating, g.tolerance()) : v;
}

void reflect_in_place(const EGCMGraph& g, int i, Vector& v) {
  Scalar s(0);
  for (int j = 0; j < g.size(); ++j) {
    if (!v(j).is_zero() && !g.entry(i, j).is_zero()) s += g.entry(i, j) * v(j);
  }
  v(i) -= s;
}

Vector reflect(const EGCMGraph& g, int i, Vector v) {
  reflect_in_place(g, i, v);
  return v;
}

Vector apply_word(const EGCMGraph& g, const GroupWord& w, Vector v) {
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) reflect_in_place(g, *it, v);
  return v;
}

Matrix word_matrix(const EGCMGraph& g, const GroupWord& w) {
  const int n = g.size();
  Matrix m(n, n);
  for (int j = 0; j < n; ++j) m.col(j) = apply_word(g, w, simple_root(g, j));
  return m;
}

bool is_right_descent(const EGCMGraph& g, const GroupWord& w, int i) {
  return is_negative(apply_word(g, w, simple_root(g, i)));
}

namespace {

using Mat2 = std::array<Scalar, 4>;  // row-major 2x2

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 power(Mat2 base, int k) {
  Mat2 r{Scalar(1), Scalar(0), Scalar(0), Scalar(1)};
  while (k > 0) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

}  // namespace

Vector dihedral_power(const EGCMGraph& g, int i, int j, int k, bool with_extra_sj) {
  g.check_node(i);
  g.check_node(j);
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "exponent must be non-negative");
  if (!g.has_edge(i, j)) {
    throw Error(ErrorCode::NoEdge, "nodes " + std::to_string(i + 1) + " and " +
                                       std::to_string(j + 1) + " are not adjacent");
  }
  const Scalar p = -g.entry(i, j);
  const Scalar q = -g.entry(j, i);
  Vector v = zero_vector(g.size());

  if (g.mode() == NumericMode::exact) {
    // Coordinates (x, y) over (alpha_i, alpha_j); s_i s_j acts by this matrix.
    const Mat2 x = power({p * q - Scalar(1), -p, q, Scalar(-1)}, k);
    Scalar xi = x[0];
    Scalar yj = x[2];
    if (with_extra_sj) yj = q * xi - yj;
    v(i) = xi;
    v(j) = yj;
    return v;
  }

  const double pd = p.to_double();
  const double qd = q.to_double();
  const double pq = pd * qd;
  const double eps = g.tolerance();
  const int m = g.bond_order(i, j);
  double xi = 0;
  double yj = 0;  // before the optional extra s_j
  double y_next = 0;
  if (is_infinite(m) && std::abs(pq - 4.0) <= eps * 4.0) {
    xi = 2.0 * k + 1;
    yj = k * qd;
    y_next = (k + 1) * qd;
  } else if (is_infinite(m)) {
    // pq > 4: eigenvalues lambda, mu = (pq - 2 +- sqrt(pq(pq - 4))) / 2 of
    // (s_i s_j), written through lambda = e^{2 phi}.
    const double phi = std::acosh(std::sqrt(pq) / 2.0);
    const double c = std::cosh(phi);
    const double s = std::sinh(phi);
    xi = std::sinh((2.0 * k + 1) * phi) / s;
    yj = qd / (2.0 * c) * std::sinh(2.0 * k * phi) / s;
    y_next = qd / (2.0 * c) * std::sinh((2.0 * k + 2) * phi) / s;
  } else {
    const double theta = std::numbers::pi / m;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    xi = std::sin((2.0 * k + 1) * theta) / s;
    yj = qd / (2.0 * c) * std::sin(2.0 * k * theta) / s;
    y_next = qd / (2.0 * c) * std::sin((2.0 * k + 2) * theta) / s;
  }
  v(i) = Scalar::real(xi, eps);
  v(j) = Scalar::real(with_extra_sj ? y_next : yj, eps);
  return v;
}

GroupWord link_word(const EGCMGraph& g, int from, int to) {
  g.check_node(from);
  g.check_node(to);
  if (from == to) throw Error(ErrorCode::InvalidArgument, "link element needs two distinct nodes");
  const int m = g.bond_order(from, to);
  if (is_infinite(m)) {
    throw Error(ErrorCode::InfiniteBond, "bond " + std::to_string(from + 1) + "-" +
                                             std::to_string(to + 1) + " is infinite");
  }
  GroupWord w;
  if (m % 2 == 1) {
    for (int k = 0; k < m - 1; ++k) w.letters.push_back(k % 2 == 0 ? from : to);
  } else {
    w.letters.push_back(to);
    for (int k = 0; k < m - 2; ++k) w.letters.push_back(k % 2 == 0 ? from : to);
  }
  w.reduced = true;
  return w;
}

Reduction word_length_and_reduce(const EGCMGraph& g, const GroupWord& w, int float_warning_length) {
  Reduction out;
  std::vector<int>& u = out.reduced.letters;
  for (int s : w.letters) {
    g.check_node(s);
    Vector beta = simple_root(g, s);
    bool deleted = false;
    for (int r = static_cast<int>(u.size()) - 1; r >= 0; --r) {
      const int letter = u[static_cast<std::size_t>(r)];
      if (single_support(beta) == letter && beta(letter).sign() > 0) {
        u.erase(u.begin() + r);
        deleted = true;
        break;
      }
      reflect_in_place(g, letter, beta);
    }
    if (!deleted) u.push_back(s);
  }
  out.reduced.reduced = true;
  out.length = out.reduced.size();
  out.precision_warning = g.mode() == NumericMode::floating && w.size() > float_warning_length;
  return out;
}

std::vector<GroupWord> enumerate_elements(const EGCMGraph& g, int max_length) {
  const int n = g.size();
  struct Item {
    GroupWord word;
    Matrix images;  // column t is word.alpha_t
  };
  std::vector<GroupWord> out;
  std::vector<Item> level;
  {
    Item e;
    e.word.reduced = true;
    e.images = word_matrix(g, e.word);
    out.push_back(e.word);
    level.push_back(std::move(e));
  }
  for (int len = 0; len < max_length && !level.empty(); ++len) {
    std::vector<Item> next;
    for (const Item& it : level) {
      for (int k = 0; k < n; ++k) {
        if (is_negative(it.images.col(k))) continue;
        // (u s_k).alpha_t = u.alpha_t - a_kt u.alpha_k
        Matrix images = it.images;
        for (int t = 0; t < n; ++t) {
          if (g.entry(k, t).is_zero()) continue;
          images.col(t) -= g.entry(k, t) * it.images.col(k);
        }
        int min_descent = -1;
        for (int t = 0; t < n && min_descent < 0; ++t) {
          if (is_negative(images.col(t))) min_descent = t;
        }
        if (min_descent != k) continue;
        Item child{it.word * GroupWord{{k}, true}, std::move(images)};
        child.word.reduced = true;
        out.push_back(child.word);
        next.push_back(std::move(child));
      }
    }
    level = std::move(next);
  }
  return out;
}

GroupWord ScalarFactorization::expand(const EGCMGraph& g) const {
  GroupWord w;
  for (int k = path.length(); k >= 0; --k) {
    const ERSequence& er = er_sequences[static_cast<std::size_t>(k)];
    for (auto it = er.partners.rbegin(); it != er.partners.rend(); ++it) {
      w = w * link_word(g, er.root, *it);
    }
    if (k > 0) {
      w = w * link_word(g, path.nodes[static_cast<std::size_t>(k - 1)],
                        path.nodes[static_cast<std::size_t>(k)]);
    }
  }
  if (sign < 0) w.letters.push_back(path.start());
  return w;
}

int ScalarFactorization::length_from_bonds(const EGCMGraph& g) const {
  int len = sign < 0 ? 1 : 0;
  for (int k = 0; k < path.length(); ++k) {
    len += g.bond_order(path.nodes[static_cast<std::size_t>(k)],
                        path.nodes[static_cast<std::size_t>(k + 1)]) - 1;
  }
  for (const ERSequence& er : er_sequences) {
    for (int p : er.partners) len += g.bond_order(er.root, p) - 1;
  }
  return len;
}

namespace {

// w reduced with w.alpha_i a positive multiple of a simple root.
ScalarFactorization factor_positive(const EGCMGraph& g, const GroupWord& w, int i) {
  if (w.empty()) {
    ScalarFactorization f;
    f.path.nodes = {i};
    f.er_sequences = {ERSequence{i, {}}};
    f.target = i;
    return f;
  }

  int j = -1;
  for (int t = 0; t < g.size() && j < 0; ++t) {
    if (is_right_descent(g, w, t)) j = t;
  }

  // w = u * tail with u free of right descents in {i, j}.
  GroupWord u = w;
  std::vector<int> tail;
  for (;;) {
    int d = -1;
    if (is_right_descent(g, u, j)) d = j;
    else if (is_right_descent(g, u, i)) d = i;
    if (d < 0) break;
    GroupWord ud = u;
    ud.letters.push_back(d);
    u = reduce(g, ud);
    tail.insert(tail.begin(), d);
  }
  if (tail != link_word(g, i, j).letters) {
    throw std::logic_error("factor_scalar_action: dihedral tail is not a link element");
  }

  if (g.bond_order(i, j) % 2 == 0) {
    ScalarFactorization f = factor_positive(g, u, i);
    auto& partners = f.er_sequences.front().partners;
    partners.insert(partners.begin(), j);
    return f;
  }
  ScalarFactorization f = factor_positive(g, u, j);
  f.path.nodes.insert(f.path.nodes.begin(), i);
  f.er_sequences.insert(f.er_sequences.begin(), ERSequence{i, {}});
  return f;
}

}  // namespace

std::optional<ScalarFactorization> factor_scalar_action(const EGCMGraph& g, const GroupWord& w, int i) {
  g.check_node(i);
  GroupWord r = reduce(g, w);
  const Vector image = apply_word(g, r, simple_root(g, i));
  const std::optional<int> x = single_support(image);
  if (!x) return std::nullopt;

  int sign = 1;
  if (image(*x).sign() < 0) {
    r.letters.push_back(i);
    r = reduce(g, r);
    sign = -1;
  }
  ScalarFactorization f = factor_positive(g, r, i);
  f.sign = sign;
  f.multiplier = pi_product(g, f.path);
  return f;
}

}  // namespace coxroot
