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

#include "coxroot/numbers_game.hpp"

#include <cmath>
#include <random>
#include <string>

#include "coxroot/error.hpp"
#include "coxroot/roots.hpp"

namespace coxroot {

namespace {

void check_position(const EGCMGraph& g, const Position& pos) {
  if (pos.size() != g.size()) {
    throw Error(ErrorCode::InvalidArgument, "position has " + std::to_string(pos.size()) +
                                                " values, expected " + std::to_string(g.size()));
  }
}

bool diverged(const Position& pos) {
  for (Eigen::Index k = 0; k < pos.size(); ++k) {
    if (!pos(k).is_exact() && std::abs(pos(k).to_double()) > kDivergenceBound) return true;
  }
  return false;
}

}  // namespace

Position fire(const EGCMGraph& g, Position pos, int i) {
  g.check_node(i);
  check_position(g, pos);
  const Scalar xi = pos(i);
  if (xi.is_zero()) return pos;
  for (int j = 0; j < g.size(); ++j) {
    if (j == i || g.entry(i, j).is_zero()) continue;
    pos(j) -= g.entry(i, j) * xi;
  }
  pos(i) = -xi;
  return pos;
}

std::vector<int> legal_moves(const EGCMGraph& g, const Position& pos) {
  check_position(g, pos);
  std::vector<int> out;
  for (int i = 0; i < g.size(); ++i) {
    if (pos(i).sign() > 0) out.push_back(i);
  }
  return out;
}

bool in_minus_d(const Position& pos) {
  for (Eigen::Index k = 0; k < pos.size(); ++k) {
    if (pos(k).sign() > 0) return false;
  }
  return true;
}

Position act_on_position(const EGCMGraph& g, const GroupWord& w, Position pos) {
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) pos = fire(g, std::move(pos), *it);
  return pos;
}

Scalar pairing(const Position& lambda, const Vector& v) {
  Scalar s(0);
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (!v(k).is_zero()) s += lambda(k) * v(k);
  }
  return s;
}

std::string_view to_string(PlayOutcome o) {
  switch (o) {
    case PlayOutcome::terminated: return "terminated";
    case PlayOutcome::step_limit: return "step_limit";
    case PlayOutcome::stuck_never: return "stuck_never";
  }
  return "?";
}

PlayRecord play(const EGCMGraph& g, const Position& pos, const Strategy& strategy, int max_steps) {
  check_position(g, pos);
  PlayRecord rec;
  rec.initial = pos;
  rec.final = pos;

  std::optional<std::mt19937_64> rng;
  if (const auto* r = std::get_if<RandomLegal>(&strategy)) rng.emplace(r->seed);
  const auto* user = std::get_if<UserSequence>(&strategy);

  for (std::size_t step = 0;; ++step) {
    if (user) {
      if (step == user->moves.size()) {
        rec.outcome = in_minus_d(rec.final) ? PlayOutcome::terminated : PlayOutcome::stuck_never;
        return rec;
      }
      const int node = user->moves[step];
      g.check_node(node);
      if (rec.final(node).sign() <= 0) {
        throw Error(ErrorCode::IllegalUserMove,
                    "step " + std::to_string(step + 1) + ": node " + std::to_string(node + 1) +
                        " has value " + rec.final(node).to_string() + " <= 0");
      }
      rec.final = fire(g, std::move(rec.final), node);
      rec.fired.push_back(node);
      continue;
    }

    const std::vector<int> moves = legal_moves(g, rec.final);
    if (moves.empty()) {
      rec.outcome = PlayOutcome::terminated;
      return rec;
    }
    if (rec.steps() >= max_steps || diverged(rec.final)) {
      rec.outcome = PlayOutcome::step_limit;
      return rec;
    }
    int node = moves.front();
    if (rng) {
      std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
      node = moves[pick(*rng)];
    }
    rec.final = fire(g, std::move(rec.final), node);
    rec.fired.push_back(node);
  }
}

GoodReport is_good_position(const EGCMGraph& g, const Position& pos, int max_steps) {
  GoodReport r;
  r.record = play(g, pos, FirstLegal{}, max_steps);
  r.good = r.record.outcome == PlayOutcome::terminated;
  return r;
}

std::string_view to_string(ConeMembership c) {
  switch (c) {
    case ConeMembership::member: return "member";
    case ConeMembership::non_member_up_to_bound: return "non_member_up_to_bound";
    case ConeMembership::member_rank2_closed_form: return "member_rank2_closed_form";
    case ConeMembership::non_member_rank2_closed_form: return "non_member_rank2_closed_form";
  }
  return "?";
}

std::optional<bool> rank2_affine_cone_member(const EGCMGraph& g, const Position& pos) {
  if (g.size() != 2 || !g.has_edge(0, 1)) return std::nullopt;
  const Scalar p = -g.entry(0, 1);
  const Scalar q = -g.entry(1, 0);
  if (p * q != Scalar(4)) return std::nullopt;
  check_position(g, pos);
  const Scalar& x = pos(0);
  const Scalar& y = pos(1);
  if (x.is_zero() && y.is_zero()) return true;
  return y > -(p / Scalar(2)) * x;
}

ConeMembership tits_cone_member(const EGCMGraph& g, const Position& pos, int max_steps, bool force_play) {
  if (!force_play) {
    if (const auto closed = rank2_affine_cone_member(g, pos)) {
      return *closed ? ConeMembership::member_rank2_closed_form
                     : ConeMembership::non_member_rank2_closed_form;
    }
  }
  return is_good_position(g, -pos, max_steps).good ? ConeMembership::member
                                                    : ConeMembership::non_member_up_to_bound;
}

std::string_view to_string(FiniteVerdict v) {
  switch (v) {
    case FiniteVerdict::finite: return "finite";
    case FiniteVerdict::infinite_evidence: return "infinite_evidence";
    case FiniteVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

FiniteReport finite_group_test(const EGCMGraph& g, int max_steps) {
  if (!g.is_connected()) throw Error(ErrorCode::NotConnected, "graph is not connected");
  FiniteReport r;
  Position ones = ones_vector(g.size());
  if (g.mode() == NumericMode::floating) ones = in_mode(ones, NumericMode::floating, g.tolerance());
  r.record = play(g, ones, FirstLegal{}, max_steps);
  if (r.record.outcome == PlayOutcome::terminated) {
    r.verdict = FiniteVerdict::finite;
    return r;
  }
  r.type = classify_matrix_type(g);
  if (*r.type == MatrixType::plus) return r;
  // Roots at depth beyond the play length confirm the orbit keeps growing.
  const int depth = std::min(max_steps, 64) + 1;
  try {
    const RootSet roots = enumerate_roots(g, {depth, 5000});
    if (!roots.exhausted()) r.verdict = FiniteVerdict::infinite_evidence;
  } catch (const RootLimitExceeded&) {
    r.verdict = FiniteVerdict::infinite_evidence;
  }
  return r;
}

}  // namespace coxroot
