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

// Root systems: orbit enumeration, scalar-multiple sets, inversion sets,
// the rho map to the standardized root system, and bounded dominance.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coxroot/egcm_graph.hpp"
#include "coxroot/geom_rep.hpp"
#include "coxroot/linalg.hpp"

namespace coxroot {

struct Root {
  Vector coords;
  /// coords == witness.alpha_node, with witness shortest.
  GroupWord witness;
  int node = 0;
  bool positive = true;
};

struct RootLimits {
  int max_length = 32;
  int max_count = 100000;
};

/// Breadth-first orbit of the simple roots. Exact roots are deduplicated by
/// coordinates; floating roots by a nearest-neighbor search within the
/// tolerance.
class RootSet {
 public:
  RootSet() = default;
  explicit RootSet(const EGCMGraph& g);

  const std::vector<Root>& roots() const { return roots_; }
  std::size_t size() const { return roots_.size(); }
  std::vector<const Root*> positives() const;
  std::size_t positive_count() const;

  /// True once a full generator sweep added nothing.
  bool exhausted() const { return exhausted_; }
  /// Witness length of the frontier.
  int depth() const { return depth_; }

  std::optional<std::size_t> find(const Vector& v) const;
  bool contains(const Vector& v) const { return find(v).has_value(); }

  /// Positive roots grouped into ray classes (mutual positive multiples),
  /// each class listed in enumeration order.
  std::vector<std::vector<const Root*>> ray_classes() const;

  /// Continues the expansion. Throws RootLimitExceeded once more than
  /// max_count roots are known; the set keeps what it found.
  void expand(const EGCMGraph& g, const RootLimits& limits);

 private:
  bool add(Root r);

  bool exact_ = true;
  double tolerance_ = kDefaultTolerance;
  std::vector<Root> roots_;
  std::unordered_map<Vector, std::size_t, VectorHash, VectorExactEqual> index_;
  // Floating roots keyed by coordinate sum; a lookup scans the window the
  // tolerance allows.
  std::multimap<double, std::size_t> float_index_;
  std::vector<std::size_t> frontier_;
  int depth_ = 0;
  bool exhausted_ = false;
};

class RootLimitExceeded : public Error {
 public:
  RootLimitExceeded(const std::string& detail, RootSet partial)
      : Error(ErrorCode::LimitExceeded, detail), partial_(std::move(partial)) {}
  const RootSet& partial() const { return partial_; }

 private:
  RootSet partial_;
};

RootSet enumerate_roots(const EGCMGraph& g, const RootLimits& limits = {});

struct SMultSet {
  int node = 0;
  bool finite = true;
  /// Positive K with K alpha_node a root, K = 1 first and the rest
  /// ascending; only when finite.
  std::vector<Scalar> multiples;
  /// A non-unital simple ON-cycle when not finite.
  std::optional<ONPath> certificate;
};

/// The multiples of alpha_node that are roots, read off the simple ON-paths
/// ending at node.
SMultSet s_mult(const EGCMGraph& g, int node);

struct InversionSet {
  GroupWord word;
  std::vector<Vector> roots;
  int size() const { return static_cast<int>(roots.size()); }
};

/// N(w), built letter by letter through N(w s_i) = s_i(N(w)) + S(alpha_i).
/// The word is reduced first. Throws InfiniteInversionSet.
InversionSet inversion_set(const EGCMGraph& g, const GroupWord& w);

struct NBoundsReport {
  int f1 = 0;
  int f2 = 0;
  int length = 0;
  int lower = 0;
  int upper = 0;
  int exact_count = 0;
  bool holds() const { return lower <= exact_count && exact_count <= upper; }
};

NBoundsReport n_bounds_report(const EGCMGraph& g, const GroupWord& w);

struct PositiveRootBounds {
  int count = 0;
  int std_count = 0;
  int f1 = 0;
  int f2 = 0;
  /// Length of the longest element, from a terminated numbers game.
  int longest_length = 0;
};

/// Throws NotFinite when either root system fails to exhaust.
PositiveRootBounds positive_root_bounds(const EGCMGraph& g, const RootLimits& limits = {});

/// w.alpha_node^std in the standardized graph. Throws NegativeRoot when
/// w.alpha_node is negative.
Vector rho_map(const EGCMGraph& g, const GroupWord& w, int node);
Vector rho_map(const EGCMGraph& g, const EGCMGraph& standard, const GroupWord& w, int node);

struct DominanceResult {
  bool dominates_up_to_bound = true;
  /// Some w with w.alpha negative and w.beta positive.
  std::optional<GroupWord> witness;
};

/// Searches every element of length <= bound for a counterexample to
/// "alpha's class dominates beta's class".
DominanceResult dominance_test(const EGCMGraph& g, const Vector& alpha, const Vector& beta, int bound);

}  // namespace coxroot
