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

// The geometric representation: reflections S_i acting on coefficient vectors
// over the simple roots, words, lengths, and scalar-multiple factorizations.
//
// Word convention: GroupWord::letters = {i1, ..., ip} denotes the product
// s_i1 s_i2 ... s_ip, which acts on a vector as S_i1 o ... o S_ip, so the LAST
// letter is applied first. The CLI and the HTTP service write words in
// application order instead (see GroupWord::from_application_order).

#pragma once

#include <optional>
#include <vector>

#include "coxroot/egcm_graph.hpp"
#include "coxroot/linalg.hpp"

namespace coxroot {

struct GroupWord {
  std::vector<int> letters;
  /// Set once the word is certified to have length letters.size().
  bool reduced = false;

  int size() const { return static_cast<int>(letters.size()); }
  bool empty() const { return letters.empty(); }

  /// Word whose first listed letter acts first.
  static GroupWord from_application_order(std::vector<int> letters);
  std::vector<int> application_order() const;

  GroupWord inverse() const;

  friend GroupWord operator*(const GroupWord& a, const GroupWord& b);
  friend bool operator==(const GroupWord& a, const GroupWord& b) { return a.letters == b.letters; }
};

Vector simple_root(const EGCMGraph& g, int i);

/// S_i: only coordinate i changes, c_i -> c_i - sum_j a_ij c_j.
void reflect_in_place(const EGCMGraph& g, int i, Vector& v);
Vector reflect(const EGCMGraph& g, int i, Vector v);

/// w.v, last letter first.
Vector apply_word(const EGCMGraph& g, const GroupWord& w, Vector v);

/// sigma(w) as a matrix; column j is w.alpha_j.
Matrix word_matrix(const EGCMGraph& g, const GroupWord& w);

/// True when w.alpha_i is a negative root, i.e. l(w s_i) < l(w).
bool is_right_descent(const EGCMGraph& g, const GroupWord& w, int i);

/// (s_i s_j)^k.alpha_i, or s_j (s_i s_j)^k.alpha_i when `with_extra_sj`, from
/// the rank-two closed forms: linear growth when pq = 4, the eigenvalue form
/// when pq > 4, the sine form when pq < 4. Exact mode evaluates the same
/// quantities by exact 2x2 matrix powering. Throws NoEdge.
Vector dihedral_power(const EGCMGraph& g, int i, int j, int k, bool with_extra_sj);

/// The link element v for a finite bond from -> to, of length m - 1:
///   odd m:  (s_from s_to)^((m-1)/2), sending alpha_from to K alpha_to;
///   even m: s_to (s_from s_to)^((m-2)/2), fixing alpha_from.
/// Throws InfiniteBond.
GroupWord link_word(const EGCMGraph& g, int from, int to);

struct Reduction {
  int length = 0;
  GroupWord reduced;
  /// Floating mode only: the word exceeded the drift bound.
  bool precision_warning = false;
};

/// Length and a reduced word for the same element. Letters are appended one
/// at a time; a descent deletes the letter found by scanning the prefix from
/// its end for the first position r at which the tracked root is a positive
/// multiple of alpha_{letter r}.
Reduction word_length_and_reduce(const EGCMGraph& g, const GroupWord& w,
                                 int float_warning_length = 64);

inline GroupWord reduce(const EGCMGraph& g, const GroupWord& w) {
  return word_length_and_reduce(g, w).reduced;
}

/// Every element of length <= max_length exactly once, as a reduced word,
/// ordered by length. An element w of length L+1 is produced only from
/// w s_k with k the smallest right descent of w.
std::vector<GroupWord> enumerate_elements(const EGCMGraph& g, int max_length);

/// Decomposition of w with w.alpha_i = sign * Pi(path) * alpha_target into
/// link elements along an ON-path and even-related link elements:
///   w = w_{S_p} v_{i_p i_{p-1}} ... w_{S_1} v_{i_1 i_0} w_{S_0} [s_i if sign < 0].
struct ScalarFactorization {
  ONPath path;
  /// One sequence per path node; er_sequences[k].root == path.nodes[k].
  std::vector<ERSequence> er_sequences;
  int sign = 1;
  /// Pi of the path; w.alpha_i = sign * multiplier * alpha_target.
  Scalar multiplier;
  int target = 0;

  /// Re-expands the factorization into generator letters.
  GroupWord expand(const EGCMGraph& g) const;

  /// Sum over ordered pairs of c(j,l)(m_jl - 1), plus 1 for the trailing s_i
  /// of a negative factorization.
  int length_from_bonds(const EGCMGraph& g) const;
};

/// Factorizes w (reduced internally) when w.alpha_i is a scalar multiple of a
/// simple root, by peeling a right descent j, splitting w over {i, j} into a
/// minimal coset representative times a link element, and recursing.
/// Returns nullopt when w.alpha_i is not such a multiple.
std::optional<ScalarFactorization> factor_scalar_action(const EGCMGraph& g, const GroupWord& w, int i);

}  // namespace coxroot
