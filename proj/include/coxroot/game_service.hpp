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

// HTTP JSON API for graph analysis and numbers-game sessions.
//
//   POST /api/sessions               {graph, position}        -> 201 {id, state}
//   GET  /api/sessions/{id}                                   -> state
//   GET  /api/sessions/{id}/history                           -> {cursor, nodes}
//   POST /api/sessions/{id}/fire     {node}                   -> state
//   POST /api/sessions/{id}/undo                              -> state
//   POST /api/sessions/{id}/jump     {branch_id}              -> state
//   POST /api/sessions/{id}/auto     {strategy, seed, max_steps} -> state
//   POST /api/sessions/{id}/analyze                           -> analysis
//   POST /api/analyze                {graph}                  -> analysis
//   GET  /api/health                                          -> {status}
//
// Nodes are 1-based on the wire; scalars travel as strings. Errors are
// {code, detail} with 400 (bad JSON), 404 (unknown session or route),
// 409 (illegal move, undo at root) or 422 (validation).

#pragma once

#include <chrono>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxroot/egcm_graph.hpp"
#include "coxroot/numbers_game.hpp"

namespace httplib {
class Server;
}

namespace coxroot {

inline constexpr int kDefaultPort = 8733;

struct ServiceConfig {
  std::size_t max_sessions = 256;
  std::chrono::seconds idle_timeout{3600};
  int max_auto_steps = 10000;
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

/// One game: a tree of positions whose edges are legal fires.
class GameSession {
 public:
  struct Node {
    int parent = -1;
    /// 0-based node fired from the parent; -1 at the root.
    int fired = -1;
    Position position;
    std::vector<int> children;
    /// Fired nodes from the root, 1-based and dot-separated; "root" at the root.
    std::string branch_id;
    /// Column t is w^-1.alpha_t for the element w applied so far.
    Matrix inverse_images;
    /// Length of w, tracked through left descents.
    int length = 0;
  };

  GameSession(std::string id, std::shared_ptr<const EGCMGraph> graph, Position initial);

  const std::string& id() const { return id_; }
  const EGCMGraph& graph() const { return *graph_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  int cursor() const { return cursor_; }
  std::uint64_t version() const { return version_; }
  const Position& position() const { return nodes_[static_cast<std::size_t>(cursor_)].position; }

  /// Fired nodes from the root to the cursor, in firing order.
  std::vector<int> fired() const;

  /// Throws IllegalMove.
  void fire(int node);
  /// Throws UndoAtRoot.
  void undo();
  /// Throws InvalidArgument for an unknown branch id.
  void jump(const std::string& branch_id);
  /// Extends the current branch; returns the play's outcome.
  PlayOutcome autoplay(const Strategy& strategy, int max_steps);

  nlohmann::json state() const;
  nlohmann::json history() const;

  std::mutex& mutex() { return mutex_; }

 private:
  void advance(int node);

  std::string id_;
  std::shared_ptr<const EGCMGraph> graph_;
  std::vector<Node> nodes_;
  int cursor_ = 0;
  std::uint64_t version_ = 0;
  std::mutex mutex_;
};

/// Graph analysis payload shared by the service and the CLI.
nlohmann::json analysis_json(const EGCMGraph& g);

/// Stateless request router plus the session store; thread-safe.
class GameService {
 public:
  explicit GameService(ServiceConfig config = {});

  ApiResponse handle(const std::string& method, const std::string& path, const std::string& body);

  std::size_t session_count() const;

 private:
  using Clock = std::chrono::steady_clock;
  struct Entry {
    std::shared_ptr<GameSession> session;
    std::list<std::string>::iterator lru;
    Clock::time_point last_used;
  };

  ApiResponse create_session(const nlohmann::json& body);
  std::shared_ptr<GameSession> lookup(const std::string& id);
  std::string new_id();
  void evict_locked();

  ServiceConfig config_;
  mutable std::mutex store_mutex_;
  std::unordered_map<std::string, Entry> sessions_;
  std::list<std::string> lru_;  // front = most recent
  std::mt19937_64 rng_;
};

/// Routes every /api request of `server` to `service`.
void mount(httplib::Server& server, GameService& service);

/// Flag, then COXROOT_PORT, then the default.
int resolve_port(std::optional<int> flag);

/// Blocks serving on host:port. Returns false when the socket cannot bind.
bool serve(GameService& service, const std::string& host, int port);

}  // namespace coxroot
