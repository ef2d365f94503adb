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

#include "coxroot/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coxroot/error.hpp"
#include "coxroot/numbers_game.hpp"

namespace coxroot {

namespace {

// (sum, l1 norm) of the coordinates as doubles.
std::pair<double, double> coordinate_sum(const Vector& v) {
  double sum = 0;
  double l1 = 0;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double d = v(k).to_double();
    sum += d;
    l1 += std::abs(d);
  }
  return {sum, l1};
}

}  // namespace

RootSet::RootSet(const EGCMGraph& g)
    : exact_(g.mode() == NumericMode::exact), tolerance_(g.tolerance()) {
  for (int i = 0; i < g.size(); ++i) {
    add(Root{simple_root(g, i), GroupWord{{}, true}, i, true});
    frontier_.push_back(roots_.size() - 1);
  }
}

bool RootSet::add(Root r) {
  if (find(r.coords)) return false;
  r.positive = is_positive(r.coords);
  roots_.push_back(std::move(r));
  if (exact_) {
    index_.emplace(roots_.back().coords, roots_.size() - 1);
  } else {
    float_index_.emplace(coordinate_sum(roots_.back().coords).first, roots_.size() - 1);
  }
  return true;
}

std::optional<std::size_t> RootSet::find(const Vector& v) const {
  if (exact_) {
    const auto it = index_.find(v);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  // Coordinatewise |a - b| <= eps max(1, |a|, |b|) bounds the sum difference
  // by eps (n + |a|_1 + |b|_1), and |b|_1 <= |a|_1 + that bound.
  const auto [sum, l1] = coordinate_sum(v);
  const double eps = tolerance_;
  const double n = static_cast<double>(v.size());
  const double window = 1.01 * eps * (n + 2.0 * l1 + eps * (n + l1)) / (1.0 - 1.01 * eps) + 1e-300;
  for (auto it = float_index_.lower_bound(sum - window); it != float_index_.end() && it->first <= sum + window; ++it) {
    if (approx_equal(roots_[it->second].coords, v)) return it->second;
  }
  return std::nullopt;
}

std::vector<const Root*> RootSet::positives() const {
  std::vector<const Root*> out;
  for (const Root& r : roots_) {
    if (r.positive) out.push_back(&r);
  }
  return out;
}

std::size_t RootSet::positive_count() const {
  return static_cast<std::size_t>(
      std::count_if(roots_.begin(), roots_.end(), [](const Root& r) { return r.positive; }));
}

std::vector<std::vector<const Root*>> RootSet::ray_classes() const {
  std::vector<std::vector<const Root*>> classes;
  for (const Root* r : positives()) {
    bool placed = false;
    for (auto& c : classes) {
      if (positive_ratio(c.front()->coords, r->coords)) {
        c.push_back(r);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({r});
  }
  return classes;
}

void RootSet::expand(const EGCMGraph& g, const RootLimits& limits) {
  const int n = g.size();
  while (!exhausted_ && depth_ < limits.max_length) {
    std::vector<std::size_t> next;
    for (int j = 0; j < n; ++j) {
      for (const std::size_t idx : frontier_) {
        Vector image = reflect(g, j, roots_[idx].coords);
        GroupWord witness{{j}, true};
        witness = witness * roots_[idx].witness;
        witness.reduced = true;
        const int node = roots_[idx].node;
        if (!add(Root{std::move(image), std::move(witness), node, true})) continue;
        next.push_back(roots_.size() - 1);
        if (static_cast<int>(roots_.size()) > limits.max_count) {
          throw RootLimitExceeded("more than " + std::to_string(limits.max_count) + " roots", *this);
        }
      }
    }
    if (next.empty()) {
      exhausted_ = true;
      frontier_.clear();
      return;
    }
    frontier_ = std::move(next);
    ++depth_;
  }
  if (exhausted_) return;
  // At the length bound: probe one more sweep without recording anything.
  for (int j = 0; j < n; ++j) {
    for (const std::size_t idx : frontier_) {
      if (!find(reflect(g, j, roots_[idx].coords))) return;
    }
  }
  exhausted_ = true;
  frontier_.clear();
}

RootSet enumerate_roots(const EGCMGraph& g, const RootLimits& limits) {
  RootSet s(g);
  s.expand(g, limits);
  return s;
}

SMultSet s_mult(const EGCMGraph& g, int node) {
  g.check_node(node);
  SMultSet out;
  out.node = node;
  const auto& component = g.components()[static_cast<std::size_t>(g.component_of(node))];
  UnitalReport report = unital_report(g, component);
  if (!report.unital) {
    out.finite = false;
    out.certificate = std::move(report.certificate);
    return out;
  }
  out.multiples = distinct_path_products(g, node);
  std::stable_partition(out.multiples.begin(), out.multiples.end(),
                        [](const Scalar& k) { return k == Scalar(1); });
  return out;
}

InversionSet inversion_set(const EGCMGraph& g, const GroupWord& w) {
  InversionSet out;
  out.word = reduce(g, w);
  for (const int letter : out.word.letters) {
    const auto& component = g.components()[static_cast<std::size_t>(g.component_of(letter))];
    if (!is_unital_on_cyclic(g, component)) {
      throw Error(ErrorCode::InfiniteInversionSet,
                  "node " + g.label(letter) + " lies in a non-unital ON-component");
    }
  }
  for (const int letter : out.word.letters) {
    for (Vector& v : out.roots) reflect_in_place(g, letter, v);
    const Vector alpha = simple_root(g, letter);
    for (const Scalar& k : distinct_path_products(g, letter)) {
      out.roots.push_back(alpha * k);
    }
  }
  return out;
}

NBoundsReport n_bounds_report(const EGCMGraph& g, const GroupWord& w) {
  const InversionSet inv = inversion_set(g, w);
  NBoundsReport r;
  r.length = inv.word.size();
  r.exact_count = inv.size();
  std::vector<int> seen;
  r.f1 = std::numeric_limits<int>::max();
  for (const int letter : inv.word.letters) {
    const int c = g.component_of(letter);
    if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
    seen.push_back(c);
    const int f = f_value(g, g.components()[static_cast<std::size_t>(c)]);
    r.f1 = std::min(r.f1, f);
    r.f2 = std::max(r.f2, f);
  }
  if (seen.empty()) r.f1 = r.f2 = 0;
  r.lower = r.f1 * r.length;
  r.upper = r.f2 * r.length;
  return r;
}

namespace {

RootSet exhaust_or_throw(const EGCMGraph& g, const RootLimits& limits, const char* what) {
  try {
    RootSet s = enumerate_roots(g, limits);
    if (s.exhausted()) return s;
  } catch (const RootLimitExceeded&) {
  }
  throw Error(ErrorCode::NotFinite, std::string(what) + " root system did not close within the limits");
}

}  // namespace

PositiveRootBounds positive_root_bounds(const EGCMGraph& g, const RootLimits& limits) {
  PositiveRootBounds b;
  b.count = static_cast<int>(exhaust_or_throw(g, limits, "the").positive_count());
  b.std_count = static_cast<int>(exhaust_or_throw(standardize(g), limits, "the standard").positive_count());
  b.f1 = std::numeric_limits<int>::max();
  for (const auto& c : g.components()) {
    const int f = f_value(g, c);
    b.f1 = std::min(b.f1, f);
    b.f2 = std::max(b.f2, f);
  }
  Position ones = ones_vector(g.size());
  if (g.mode() == NumericMode::floating) ones = in_mode(ones, NumericMode::floating, g.tolerance());
  const PlayRecord rec = play(g, ones, FirstLegal{}, limits.max_count);
  b.longest_length = rec.steps();
  return b;
}

Vector rho_map(const EGCMGraph& g, const EGCMGraph& standard, const GroupWord& w, int node) {
  if (!is_positive(apply_word(g, w, simple_root(g, node)))) {
    throw Error(ErrorCode::NegativeRoot, "the witness yields a negative root");
  }
  return apply_word(standard, w, simple_root(standard, node));
}

Vector rho_map(const EGCMGraph& g, const GroupWord& w, int node) {
  return rho_map(g, standardize(g), w, node);
}

DominanceResult dominance_test(const EGCMGraph& g, const Vector& alpha, const Vector& beta, int bound) {
  DominanceResult r;
  for (const GroupWord& w : enumerate_elements(g, bound)) {
    if (is_negative(apply_word(g, w, alpha)) && is_positive(apply_word(g, w, beta))) {
      r.dominates_up_to_bound = false;
      r.witness = w;
      return r;
    }
  }
  return r;
}

}  // namespace coxroot
