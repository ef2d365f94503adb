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

// The numbers game: positions are elements of V* in coordinates
// x_i = <lambda, alpha_i>, and firing node i applies s_i contragrediently:
//   x_i -> -x_i,  x_j -> x_j - a_ij x_i  (j != i).
// A fire is legal when x_i > 0. Firing i1, ..., ip in that order applies the
// group element s_ip ... s_i1.

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "coxroot/egcm_graph.hpp"
#include "coxroot/geom_rep.hpp"
#include "coxroot/linalg.hpp"

namespace coxroot {

using Position = Vector;

inline constexpr int kDefaultMaxSteps = 100000;
/// Floating play stops once a coordinate exceeds this magnitude.
inline constexpr double kDivergenceBound = 1e12;

Position fire(const EGCMGraph& g, Position pos, int i);

/// Nodes with strictly positive value, ascending.
std::vector<int> legal_moves(const EGCMGraph& g, const Position& pos);

/// All coordinates <= 0.
bool in_minus_d(const Position& pos);

/// <w.lambda, alpha_i> for the contragredient action, computed by firing.
Position act_on_position(const EGCMGraph& g, const GroupWord& w, Position pos);

/// Evaluates <lambda, v> for v in coefficient coordinates.
Scalar pairing(const Position& lambda, const Vector& v);

struct FirstLegal {};
struct RandomLegal {
  std::uint64_t seed = 0;
};
/// Fires exactly these nodes (0-based) in order, then keeps going with
/// nothing: the play ends when the list runs out.
struct UserSequence {
  std::vector<int> moves;
};
using Strategy = std::variant<FirstLegal, RandomLegal, UserSequence>;

enum class PlayOutcome {
  terminated,
  step_limit,
  /// A user sequence ran out before the position reached -D.
  stuck_never,
};

std::string_view to_string(PlayOutcome o);

struct PlayRecord {
  Position initial;
  std::vector<int> fired;
  Position final;
  PlayOutcome outcome = PlayOutcome::terminated;
  int steps() const { return static_cast<int>(fired.size()); }
  /// The group element applied, as a product-order word.
  GroupWord word() const { return GroupWord::from_application_order(fired); }
};

/// Throws IllegalUserMove when a user sequence fires a non-positive node.
PlayRecord play(const EGCMGraph& g, const Position& pos, const Strategy& strategy,
                int max_steps = kDefaultMaxSteps);

struct GoodReport {
  bool good = false;
  PlayRecord record;
};

/// Good iff some legal play from pos reaches -D; semi-decided within
/// max_steps, so `good == false` only means "not within the bound".
GoodReport is_good_position(const EGCMGraph& g, const Position& pos, int max_steps = kDefaultMaxSteps);

enum class ConeMembership {
  member,
  non_member_up_to_bound,
  member_rank2_closed_form,
  non_member_rank2_closed_form,
};

std::string_view to_string(ConeMembership c);

/// Rank-two graphs with pq = 4 are decided by the closed form
/// y > -(p/2) x or x = y = 0; everything else plays from -lambda.
ConeMembership tits_cone_member(const EGCMGraph& g, const Position& pos,
                                int max_steps = kDefaultMaxSteps, bool force_play = false);

/// The closed form alone; nullopt unless the graph is rank two with pq = 4.
std::optional<bool> rank2_affine_cone_member(const EGCMGraph& g, const Position& pos);

enum class FiniteVerdict { finite, infinite_evidence, inconclusive };

std::string_view to_string(FiniteVerdict v);

struct FiniteReport {
  FiniteVerdict verdict = FiniteVerdict::inconclusive;
  PlayRecord record;
  std::optional<MatrixType> type;
};

/// Plays from the all-ones position. Throws NotConnected.
FiniteReport finite_group_test(const EGCMGraph& g, int max_steps = kDefaultMaxSteps);

}  // namespace coxroot
