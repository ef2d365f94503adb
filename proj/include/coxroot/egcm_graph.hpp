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

// E-generalized Cartan matrices and the graph data derived from them: bond
// orders, odd neighbors, ON-paths and their products, ON-connected components,
// Vinberg type and standardization.
//
// Nodes are 0-based everywhere in the library; the CLI and the HTTP service
// translate to the 1-based labels users see.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxroot/error.hpp"
#include "coxroot/linalg.hpp"
#include "coxroot/scalar.hpp"

namespace coxroot {

/// Bond order sentinel for m_ij = infinity.
inline constexpr int kInfiniteBond = 0;

inline bool is_infinite(int bond_order) { return bond_order == kInfiniteBond; }

struct GraphConfig {
  /// Unset means automatic: exact iff every entry is an integer or p/q literal.
  std::optional<NumericMode> mode;
  double tolerance = kDefaultTolerance;
  /// Largest k tried when recognizing a floating product as 4cos^2(pi/k).
  int k_max = 1000;
};

/// Unvalidated n x n table of scalar literals, as read from a graph document.
struct RawEntryTable {
  std::vector<std::vector<std::string>> entries;
  std::vector<std::string> labels;
};

/// Validated matrix A plus everything derived from it. Immutable once built,
/// so it can be shared freely between threads.
class EGCMGraph {
 public:
  /// Validates `a` and resolves every bond order. Throws Error with one of
  /// DiagonalNotTwo, PositiveOffDiagonal, AsymmetricZeroPair,
  /// UnrecognizedBond.
  EGCMGraph(Matrix a, const GraphConfig& config, std::vector<std::string> labels = {});

  int size() const { return n_; }
  const Matrix& matrix() const { return a_; }
  const Scalar& entry(int i, int j) const { return a_(i, j); }

  NumericMode mode() const { return mode_; }
  double tolerance() const { return tolerance_; }
  int k_max() const { return k_max_; }
  GraphConfig config() const { return {mode_, tolerance_, k_max_}; }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }

  /// m_ij; 1 on the diagonal, kInfiniteBond for infinity.
  int bond_order(int i, int j) const { return bonds_[index(i, j)]; }
  bool has_edge(int i, int j) const { return i != j && !a_(i, j).is_zero(); }
  bool odd_neighbors(int i, int j) const;
  /// m_ij even; includes non-adjacent pairs (m_ij = 2).
  bool even_related(int i, int j) const;
  bool odd_asymmetry(int i, int j) const;
  /// Odd asymmetries as (i, j) pairs with i < j.
  std::vector<std::pair<int, int>> odd_asymmetries() const;

  /// ON-connected components, each sorted, ordered by smallest node.
  const std::vector<std::vector<int>>& components() const { return components_; }
  int component_of(int node) const { return component_of_[static_cast<std::size_t>(node)]; }

  /// Ordinary graph connectivity of Gamma.
  bool is_connected() const;

  void check_node(int i) const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  Matrix a_;
  NumericMode mode_ = NumericMode::exact;
  double tolerance_ = kDefaultTolerance;
  int k_max_ = 1000;
  std::vector<std::string> labels_;
  std::vector<int> bonds_;
  std::vector<std::vector<int>> components_;
  std::vector<int> component_of_;
};

/// Parses the literal table and builds the graph. Unparseable literals raise
/// ParseError; everything else as the EGCMGraph constructor.
EGCMGraph validate_and_build(const RawEntryTable& input, const GraphConfig& config = {});

/// Bond recognition for a product a_ij * a_ji >= 0. Returns 2 for a zero
/// product, kInfiniteBond for products >= 4, otherwise the k with
/// product = 4cos^2(pi/k). Throws UnrecognizedBond.
int recognize_bond(const Scalar& product, NumericMode mode, int k_max);

/// 4cos^2(pi/k) in the requested mode; exact mode supports k in {2,3,4,6}.
Scalar four_cos_squared(int k, NumericMode mode, double eps);

/// Sequence of nodes whose consecutive entries are odd neighbors.
struct ONPath {
  std::vector<int> nodes;

  int length() const { return static_cast<int>(nodes.size()) - 1; }
  int start() const { return nodes.front(); }
  int end() const { return nodes.back(); }
  bool is_cycle() const { return nodes.size() > 1 && nodes.front() == nodes.back(); }
  /// No repeated nodes except possibly start == end.
  bool is_simple() const;

  friend bool operator==(const ONPath&, const ONPath&) = default;
};

/// Pairs (root, partner) all sharing one root node; every partner is
/// even-related to the root.
struct ERSequence {
  int root = 0;
  std::vector<int> partners;

  friend bool operator==(const ERSequence&, const ERSequence&) = default;
};

/// K for the odd bond from -> to: the scalar with v.alpha_from = K alpha_to for
/// the link element v. Equals -a_{to,from} / (2cos(pi/m)). Throws
/// NotOddNeighbors.
Scalar link_scalar(const EGCMGraph& g, int from, int to);

/// Product of link scalars along the path; 1 for a length-zero path. Throws
/// InvalidPath.
Scalar pi_product(const EGCMGraph& g, const ONPath& path);

/// Every ON-path ending at `end` with pairwise distinct nodes, including the
/// length-zero path. Enumeration is exhaustive; meant for small components.
std::vector<ONPath> simple_on_paths(const EGCMGraph& g, int end);

/// Every simple ON-cycle through nodes of `component` (length >= 2), each
/// reported once per starting node and direction.
std::vector<ONPath> simple_on_cycles(const EGCMGraph& g, const std::vector<int>& component);

struct UnitalReport {
  bool unital = true;
  /// A simple ON-cycle with product != 1 when not unital.
  std::optional<ONPath> certificate;
};

/// Unital ON-cyclic test for one ON-component, via a spanning tree of
/// potentials: the component is unital iff every odd edge agrees with the
/// tree, and a disagreeing edge closes a non-unital fundamental cycle.
UnitalReport unital_report(const EGCMGraph& g, const std::vector<int>& component);

inline bool is_unital_on_cyclic(const EGCMGraph& g, const std::vector<int>& component) {
  return unital_report(g, component).unital;
}

/// Distinct products over simple ON-paths ending at `end`, ascending. Throws
/// NotUnitalONCyclic when the component of `end` has a non-unital cycle.
std::vector<Scalar> distinct_path_products(const EGCMGraph& g, int end);

/// Number of distinct path products into any node of the component.
int f_value(const EGCMGraph& g, const std::vector<int>& component);

enum class MatrixType { plus, zero, minus };

std::string_view to_string(MatrixType t);

/// Vinberg trichotomy of a connected matrix, decided by three strict
/// feasibility problems (strict inequalities encoded with margin 1). Throws
/// NotConnected.
MatrixType classify_matrix_type(const EGCMGraph& g);

/// Symmetric matrix with entries -2cos(pi/m_ij) (or -2 for infinite bonds)
/// defining the same Coxeter group. Exact when every bond is 2, 3 or infinite.
EGCMGraph standardize(const EGCMGraph& g);

}  // namespace coxroot
