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

#include "coxroot/egcm_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>

namespace coxroot {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DiagonalNotTwo: return "DiagonalNotTwo";
    case ErrorCode::PositiveOffDiagonal: return "PositiveOffDiagonal";
    case ErrorCode::AsymmetricZeroPair: return "AsymmetricZeroPair";
    case ErrorCode::UnrecognizedBond: return "UnrecognizedBond";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotOddNeighbors: return "NotOddNeighbors";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::NotUnitalONCyclic: return "NotUnitalONCyclic";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::NoEdge: return "NoEdge";
    case ErrorCode::InfiniteBond: return "InfiniteBond";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::InfiniteInversionSet: return "InfiniteInversionSet";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::NegativeRoot: return "NegativeRoot";
    case ErrorCode::IllegalUserMove: return "IllegalUserMove";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::JsonError: return "JsonError";
    case ErrorCode::ValueSyntaxError: return "ValueSyntaxError";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::IllegalMove: return "IllegalMove";
    case ErrorCode::UndoAtRoot: return "UndoAtRoot";
  }
  return "Unknown";
}

namespace {

std::string pair_name(const std::vector<std::string>& labels, int i, int j) {
  return "(" + labels[static_cast<std::size_t>(i)] + "," + labels[static_cast<std::size_t>(j)] + ")";
}

}  // namespace

Scalar four_cos_squared(int k, NumericMode mode, double eps) {
  if (mode == NumericMode::exact) {
    switch (k) {
      case 2: return Scalar(0);
      case 3: return Scalar(1);
      case 4: return Scalar(2);
      case 6: return Scalar(3);
      default:
        throw Error(ErrorCode::InvalidArgument,
                    "4cos^2(pi/" + std::to_string(k) + ") is irrational");
    }
  }
  const double c = std::cos(std::numbers::pi / k);
  return Scalar::real(4.0 * c * c, eps);
}

int recognize_bond(const Scalar& product, NumericMode mode, int k_max) {
  if (product.is_zero()) return 2;
  if (compare(product, Scalar(4)) >= 0) return kInfiniteBond;
  if (mode == NumericMode::exact && product.is_exact()) {
    if (product == Scalar(1)) return 3;
    if (product == Scalar(2)) return 4;
    if (product == Scalar(3)) return 6;
    throw Error(ErrorCode::UnrecognizedBond,
                "product " + product.to_string() + " is not 4cos^2(pi/k) for k in {2,3,4,6}");
  }
  const double eps = product.is_exact() ? kDefaultTolerance : product.tolerance();
  int found = 0;
  int matches = 0;
  for (int k = 3; k <= k_max; ++k) {
    if (compare(product, four_cos_squared(k, NumericMode::floating, eps)) == 0) {
      found = k;
      ++matches;
    }
  }
  if (matches != 1) {
    throw Error(ErrorCode::UnrecognizedBond,
                "product " + product.to_string() +
                    (matches == 0 ? " matches no 4cos^2(pi/k) with k <= " + std::to_string(k_max)
                                  : " is ambiguous between several k"));
  }
  return found;
}

EGCMGraph::EGCMGraph(Matrix a, const GraphConfig& config, std::vector<std::string> labels)
    : n_(static_cast<int>(a.rows())),
      a_(std::move(a)),
      tolerance_(config.tolerance),
      k_max_(config.k_max),
      labels_(std::move(labels)) {
  if (n_ < 1 || a_.rows() != a_.cols()) {
    throw Error(ErrorCode::ParseError, "matrix must be square with n >= 1");
  }
  if (labels_.empty()) {
    for (int i = 0; i < n_; ++i) labels_.push_back(std::to_string(i + 1));
  }
  if (static_cast<int>(labels_.size()) != n_) {
    throw Error(ErrorCode::ParseError, "label count does not match n");
  }

  bool all_exact = true;
  for (Eigen::Index k = 0; k < a_.size(); ++k) all_exact &= a_.data()[k].is_exact();
  mode_ = config.mode.value_or(all_exact ? NumericMode::exact : NumericMode::floating);
  if (mode_ == NumericMode::exact && !all_exact) {
    throw Error(ErrorCode::ParseError, "exact mode requested for floating entries");
  }
  if (mode_ == NumericMode::floating) {
    for (Eigen::Index k = 0; k < a_.size(); ++k) {
      a_.data()[k] = a_.data()[k].in_mode(NumericMode::floating, tolerance_);
    }
  }

  bonds_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 1);
  for (int i = 0; i < n_; ++i) {
    if (a_(i, i) != Scalar(2)) {
      throw Error(ErrorCode::DiagonalNotTwo,
                  "a_" + labels_[static_cast<std::size_t>(i)] + labels_[static_cast<std::size_t>(i)] +
                      " = " + a_(i, i).to_string() + ", expected 2");
    }
  }
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (i == j) continue;
      if (a_(i, j).sign() > 0) {
        throw Error(ErrorCode::PositiveOffDiagonal,
                    "entry " + pair_name(labels_, i, j) + " = " + a_(i, j).to_string() + " is positive");
      }
      if (a_(i, j).is_zero() != a_(j, i).is_zero()) {
        throw Error(ErrorCode::AsymmetricZeroPair,
                    "entry " + pair_name(labels_, i, j) + " = " + a_(i, j).to_string() +
                        " but its transpose is " + a_(j, i).to_string());
      }
    }
  }
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      int m = 2;
      if (has_edge(i, j)) {
        try {
          m = recognize_bond(a_(i, j) * a_(j, i), mode_, k_max_);
        } catch (const Error& e) {
          throw Error(e.code(), "bond " + pair_name(labels_, i, j) + ": " + e.what());
        }
      }
      bonds_[index(i, j)] = m;
      bonds_[index(j, i)] = m;
    }
  }

  // ON-components by union-find over odd bonds.
  std::vector<int> parent(static_cast<std::size_t>(n_));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (odd_neighbors(i, j)) parent[static_cast<std::size_t>(find(i))] = find(j);

  component_of_.assign(static_cast<std::size_t>(n_), -1);
  for (int i = 0; i < n_; ++i) {
    const int r = find(i);
    if (component_of_[static_cast<std::size_t>(r)] < 0) {
      component_of_[static_cast<std::size_t>(r)] = static_cast<int>(components_.size());
      components_.emplace_back();
    }
    const int c = component_of_[static_cast<std::size_t>(r)];
    components_[static_cast<std::size_t>(c)].push_back(i);
  }
  for (int i = 0; i < n_; ++i) component_of_[static_cast<std::size_t>(i)] = component_of_[static_cast<std::size_t>(find(i))];
}

bool EGCMGraph::odd_neighbors(int i, int j) const {
  if (i == j) return false;
  const int m = bond_order(i, j);
  return !is_infinite(m) && m % 2 == 1;
}

bool EGCMGraph::even_related(int i, int j) const {
  if (i == j) return false;
  const int m = bond_order(i, j);
  return !is_infinite(m) && m % 2 == 0;
}

bool EGCMGraph::odd_asymmetry(int i, int j) const {
  return odd_neighbors(i, j) && a_(i, j) != a_(j, i);
}

std::vector<std::pair<int, int>> EGCMGraph::odd_asymmetries() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (odd_asymmetry(i, j)) out.emplace_back(i, j);
  return out;
}

bool EGCMGraph::is_connected() const {
  std::vector<bool> seen(static_cast<std::size_t>(n_), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < n_; ++j) {
      if (!seen[static_cast<std::size_t>(j)] && has_edge(i, j)) {
        seen[static_cast<std::size_t>(j)] = true;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == n_;
}

void EGCMGraph::check_node(int i) const {
  if (i < 0 || i >= n_) {
    throw Error(ErrorCode::InvalidArgument,
                "node " + std::to_string(i + 1) + " out of range 1.." + std::to_string(n_));
  }
}

EGCMGraph validate_and_build(const RawEntryTable& input, const GraphConfig& config) {
  const auto n = static_cast<int>(input.entries.size());
  if (n < 1) throw Error(ErrorCode::ParseError, "empty matrix");

  bool all_rational = true;
  for (const auto& row : input.entries) {
    if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::ParseError, "matrix is not square");
    for (const auto& text : row) all_rational &= Scalar::is_rational_literal(text);
  }
  const NumericMode mode = config.mode.value_or(all_rational ? NumericMode::exact : NumericMode::floating);

  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::string& text = input.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      try {
        a(i, j) = Scalar::parse(text, mode, config.tolerance);
      } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, e.what());
      }
    }
  }
  GraphConfig resolved = config;
  resolved.mode = mode;
  return EGCMGraph(std::move(a), resolved, input.labels);
}

bool ONPath::is_simple() const {
  std::vector<int> seen(nodes.begin(), nodes.end());
  if (is_cycle()) seen.pop_back();
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

Scalar link_scalar(const EGCMGraph& g, int from, int to) {
  g.check_node(from);
  g.check_node(to);
  if (!g.odd_neighbors(from, to)) {
    throw Error(ErrorCode::NotOddNeighbors,
                "nodes " + g.label(from) + " and " + g.label(to) + " are not odd neighbors");
  }
  const int m = g.bond_order(from, to);
  if (g.mode() == NumericMode::exact && m == 3) return -g.entry(to, from);
  const double two_cos = 2.0 * std::cos(std::numbers::pi / m);
  return -g.entry(to, from) / Scalar::real(two_cos, g.tolerance());
}

Scalar pi_product(const EGCMGraph& g, const ONPath& path) {
  if (path.nodes.empty()) throw Error(ErrorCode::InvalidPath, "empty node sequence");
  Scalar product(1);
  for (std::size_t k = 0; k + 1 < path.nodes.size(); ++k) {
    const int from = path.nodes[k];
    const int to = path.nodes[k + 1];
    g.check_node(from);
    g.check_node(to);
    if (!g.odd_neighbors(from, to)) {
      throw Error(ErrorCode::InvalidPath,
                  "step " + g.label(from) + " -> " + g.label(to) + " is not between odd neighbors");
    }
    product *= link_scalar(g, from, to);
  }
  return product;
}

std::vector<ONPath> simple_on_paths(const EGCMGraph& g, int end) {
  g.check_node(end);
  std::vector<ONPath> out;
  // Grow backwards from `end`; `reversed` holds end, i_{p-1}, ..., i_0.
  std::vector<int> reversed{end};
  std::vector<bool> used(static_cast<std::size_t>(g.size()), false);
  used[static_cast<std::size_t>(end)] = true;
  auto emit = [&] { out.push_back(ONPath{{reversed.rbegin(), reversed.rend()}}); };
  auto dfs = [&](auto&& self) -> void {
    emit();
    const int head = reversed.back();
    for (int j = 0; j < g.size(); ++j) {
      if (used[static_cast<std::size_t>(j)] || !g.odd_neighbors(head, j)) continue;
      used[static_cast<std::size_t>(j)] = true;
      reversed.push_back(j);
      self(self);
      reversed.pop_back();
      used[static_cast<std::size_t>(j)] = false;
    }
  };
  dfs(dfs);
  return out;
}

std::vector<ONPath> simple_on_cycles(const EGCMGraph& g, const std::vector<int>& component) {
  std::vector<ONPath> out;
  for (const int start : component) {
    for (const ONPath& p : simple_on_paths(g, start)) {
      if (p.length() >= 1 && g.odd_neighbors(start, p.start())) {
        ONPath cycle{{start}};
        cycle.nodes.insert(cycle.nodes.end(), p.nodes.begin(), p.nodes.end());
        out.push_back(std::move(cycle));
      }
    }
  }
  return out;
}

namespace {

struct Potentials {
  std::vector<std::optional<Scalar>> value;  // Pi of the tree path root -> node
  std::vector<int> parent;
  UnitalReport report;
};

std::vector<int> tree_path_from_root(const std::vector<int>& parent, int node) {
  std::vector<int> path;
  for (int x = node; x >= 0; x = parent[static_cast<std::size_t>(x)]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

Potentials compute_potentials(const EGCMGraph& g, const std::vector<int>& component) {
  Potentials p;
  p.value.resize(static_cast<std::size_t>(g.size()));
  p.parent.assign(static_cast<std::size_t>(g.size()), -1);
  if (component.empty()) return p;

  const int root = component.front();
  p.value[static_cast<std::size_t>(root)] = Scalar(1);
  std::queue<int> frontier;
  frontier.push(root);
  while (!frontier.empty()) {
    const int i = frontier.front();
    frontier.pop();
    for (int j = 0; j < g.size(); ++j) {
      if (!g.odd_neighbors(i, j) || p.value[static_cast<std::size_t>(j)]) continue;
      p.value[static_cast<std::size_t>(j)] = *p.value[static_cast<std::size_t>(i)] * link_scalar(g, i, j);
      p.parent[static_cast<std::size_t>(j)] = i;
      frontier.push(j);
    }
  }

  for (const int i : component) {
    for (int j = 0; j < g.size(); ++j) {
      if (!g.odd_neighbors(i, j)) continue;
      const Scalar expected = *p.value[static_cast<std::size_t>(i)] * link_scalar(g, i, j);
      if (expected == *p.value[static_cast<std::size_t>(j)]) continue;
      // Fundamental cycle: j -> (tree) -> i -> j.
      const std::vector<int> to_i = tree_path_from_root(p.parent, i);
      const std::vector<int> to_j = tree_path_from_root(p.parent, j);
      std::size_t common = 0;
      while (common < to_i.size() && common < to_j.size() && to_i[common] == to_j[common]) ++common;
      ONPath cycle;
      for (std::size_t k = to_j.size(); k-- > common;) cycle.nodes.push_back(to_j[k]);
      for (std::size_t k = common - 1; k < to_i.size(); ++k) cycle.nodes.push_back(to_i[k]);
      cycle.nodes.push_back(j);
      p.report.unital = false;
      p.report.certificate = std::move(cycle);
      return p;
    }
  }
  return p;
}

}  // namespace

UnitalReport unital_report(const EGCMGraph& g, const std::vector<int>& component) {
  return compute_potentials(g, component).report;
}

std::vector<Scalar> distinct_path_products(const EGCMGraph& g, int end) {
  g.check_node(end);
  const auto& component = g.components()[static_cast<std::size_t>(g.component_of(end))];
  const Potentials p = compute_potentials(g, component);
  if (!p.report.unital) {
    throw Error(ErrorCode::NotUnitalONCyclic,
                "component of node " + g.label(end) + " has a non-unital ON-cycle");
  }
  // In a unital component Pi(u -> end) = value(end) / value(u) for any path.
  std::vector<Scalar> values;
  for (const int u : component) {
    values.push_back(*p.value[static_cast<std::size_t>(end)] / *p.value[static_cast<std::size_t>(u)]);
  }
  std::sort(values.begin(), values.end(),
            [](const Scalar& a, const Scalar& b) { return a.to_double() < b.to_double(); });
  std::vector<Scalar> distinct;
  for (const Scalar& v : values) {
    if (distinct.empty() || distinct.back() != v) distinct.push_back(v);
  }
  return distinct;
}

int f_value(const EGCMGraph& g, const std::vector<int>& component) {
  if (component.empty()) throw Error(ErrorCode::InvalidArgument, "empty component");
  return static_cast<int>(distinct_path_products(g, component.front()).size());
}

std::string_view to_string(MatrixType t) {
  switch (t) {
    case MatrixType::plus: return "plus";
    case MatrixType::zero: return "zero";
    case MatrixType::minus: return "minus";
  }
  return "unknown";
}

MatrixType classify_matrix_type(const EGCMGraph& g) {
  if (!g.is_connected()) throw Error(ErrorCode::NotConnected, "graph is not connected");
  const int n = g.size();
  const Matrix& a = g.matrix();
  // v = 1 + u with u >= 0 puts v > 0 on the scale-invariant cone.
  const Vector a_ones = a * ones_vector(n);
  auto system = [&](Relation rel, const Scalar& margin) {
    Vector rhs(n);
    for (int k = 0; k < n; ++k) rhs(k) = margin - a_ones(k);
    const std::vector<Relation> rels(static_cast<std::size_t>(n), rel);
    return feasible(a, rhs, rels);
  };
  const bool plus = system(Relation::greater_equal, Scalar(1));
  const bool zero = system(Relation::equal, Scalar(0)) && rank(a) == n - 1;
  const bool minus = system(Relation::less_equal, Scalar(-1));
  const int count = int(plus) + int(zero) + int(minus);
  if (count != 1) {
    throw Error(ErrorCode::InvalidArgument,
                "matrix type undecidable at this tolerance (" + std::to_string(count) + " systems feasible)");
  }
  return plus ? MatrixType::plus : zero ? MatrixType::zero : MatrixType::minus;
}

EGCMGraph standardize(const EGCMGraph& g) {
  const int n = g.size();
  bool exact = true;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int m = g.bond_order(i, j);
      exact &= (m == 2 || m == 3 || is_infinite(m));
    }
  }
  const NumericMode mode = exact ? NumericMode::exact : NumericMode::floating;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        a(i, j) = Scalar(2);
        continue;
      }
      const int m = g.bond_order(i, j);
      if (is_infinite(m)) {
        a(i, j) = Scalar(-2);
      } else if (m == 2) {
        a(i, j) = Scalar(0);
      } else if (m == 3) {
        a(i, j) = Scalar(-1);
      } else {
        a(i, j) = Scalar::real(-2.0 * std::cos(std::numbers::pi / m), g.tolerance());
      }
    }
  }
  GraphConfig config = g.config();
  config.mode = mode;
  return EGCMGraph(std::move(a), config, g.labels());
}

}  // namespace coxroot
