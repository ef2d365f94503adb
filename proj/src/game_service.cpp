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

#include "coxroot/game_service.hpp"

#include <cstdio>
#include <cstdlib>
#include <regex>
#include <string_view>

#include <httplib.h>

#include "coxroot/error.hpp"
#include "coxroot/geom_rep.hpp"
#include "coxroot/graph_document.hpp"
#include "coxroot/roots.hpp"

namespace coxroot {

using nlohmann::json;

namespace {

json one_based(const std::vector<int>& nodes) {
  json a = json::array();
  for (int v : nodes) a.push_back(v + 1);
  return a;
}

json scalars(const Vector& v) {
  json a = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k).to_string());
  return a;
}

ApiResponse error_response(int status, std::string_view code, const std::string& detail) {
  return {status, json{{"code", code}, {"detail", detail}}};
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession: return 404;
    case ErrorCode::IllegalMove:
    case ErrorCode::UndoAtRoot: return 409;
    default: return 422;
  }
}

Position parse_position(const EGCMGraph& g, const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, "position must be an array");
  if (static_cast<int>(j.size()) != g.size()) {
    throw Error(ErrorCode::InvalidArgument, "position has " + std::to_string(j.size()) +
                                                " values, expected " + std::to_string(g.size()));
  }
  Position p(g.size());
  for (int k = 0; k < g.size(); ++k) {
    const json& v = j[static_cast<std::size_t>(k)];
    std::string text;
    if (v.is_string()) text = v.get<std::string>();
    else if (v.is_number()) text = v.dump();
    else throw Error(ErrorCode::InvalidArgument, "position values must be strings or numbers");
    p(k) = Scalar::parse(text, g.mode(), g.tolerance());
  }
  return p;
}

Strategy parse_strategy(const json& body) {
  const std::string name = body.value("strategy", std::string("first_legal"));
  if (name == "first_legal") return FirstLegal{};
  if (name == "random") return RandomLegal{body.value("seed", std::uint64_t{0})};
  throw Error(ErrorCode::InvalidArgument, "unknown strategy \"" + name + "\"");
}

}  // namespace

GameSession::GameSession(std::string id, std::shared_ptr<const EGCMGraph> graph, Position initial)
    : id_(std::move(id)), graph_(std::move(graph)) {
  nodes_.push_back(Node{-1, -1, std::move(initial), {}, "root", word_matrix(*graph_, GroupWord{}), 0});
}

std::vector<int> GameSession::fired() const {
  std::vector<int> out;
  for (int k = cursor_; nodes_[static_cast<std::size_t>(k)].parent >= 0; k = nodes_[static_cast<std::size_t>(k)].parent) {
    out.push_back(nodes_[static_cast<std::size_t>(k)].fired);
  }
  return {out.rbegin(), out.rend()};
}

void GameSession::advance(int node) {
  Node& here = nodes_[static_cast<std::size_t>(cursor_)];
  for (int child : here.children) {
    if (nodes_[static_cast<std::size_t>(child)].fired == node) {
      cursor_ = child;
      return;
    }
  }
  Node next;
  next.parent = cursor_;
  next.fired = node;
  next.position = coxroot::fire(*graph_, here.position, node);
  next.branch_id = (cursor_ == 0 ? std::string() : here.branch_id + ".") + std::to_string(node + 1);
  // Firing s multiplies w on the left: l(s w) < l(w) iff w^-1.alpha_s < 0,
  // and (s w)^-1.alpha_t = w^-1.alpha_t - a_st w^-1.alpha_s.
  const auto col = here.inverse_images.col(node);
  next.length = here.length + (is_negative(col) ? -1 : 1);
  next.inverse_images = here.inverse_images;
  for (int t = 0; t < graph_->size(); ++t) {
    if (!graph_->entry(node, t).is_zero()) next.inverse_images.col(t) -= graph_->entry(node, t) * col;
  }
  nodes_.push_back(std::move(next));
  const int idx = static_cast<int>(nodes_.size()) - 1;
  nodes_[static_cast<std::size_t>(cursor_)].children.push_back(idx);
  cursor_ = idx;
}

void GameSession::fire(int node) {
  if (node < 0 || node >= graph_->size()) {
    throw Error(ErrorCode::IllegalMove, "node " + std::to_string(node + 1) + " does not exist");
  }
  if (position()(node).sign() <= 0) {
    throw Error(ErrorCode::IllegalMove,
                "node " + std::to_string(node + 1) + " has value " + position()(node).to_string());
  }
  advance(node);
  ++version_;
}

void GameSession::undo() {
  const int parent = nodes_[static_cast<std::size_t>(cursor_)].parent;
  if (parent < 0) throw Error(ErrorCode::UndoAtRoot, "already at the initial position");
  cursor_ = parent;
  ++version_;
}

void GameSession::jump(const std::string& branch_id) {
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (nodes_[k].branch_id == branch_id) {
      cursor_ = static_cast<int>(k);
      ++version_;
      return;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown branch \"" + branch_id + "\"");
}

PlayOutcome GameSession::autoplay(const Strategy& strategy, int max_steps) {
  const PlayRecord rec = play(*graph_, position(), strategy, max_steps);
  for (int node : rec.fired) advance(node);
  ++version_;
  return rec.outcome;
}

json GameSession::state() const {
  const std::vector<int> fired_nodes = fired();
  const bool reduced = nodes_[static_cast<std::size_t>(cursor_)].length == static_cast<int>(fired_nodes.size());
  json s;
  s["position"] = scalars(position());
  s["legal_moves"] = one_based(legal_moves(*graph_, position()));
  s["is_terminal"] = in_minus_d(position());
  s["fired"] = one_based(fired_nodes);
  s["reduced_word"] = one_based(
      reduced ? fired_nodes : reduce(*graph_, GroupWord::from_application_order(fired_nodes)).application_order());
  s["is_reduced"] = reduced;
  s["branch_id"] = nodes_[static_cast<std::size_t>(cursor_)].branch_id;
  s["version"] = version_;
  return s;
}

json GameSession::history() const {
  json nodes = json::array();
  for (const Node& n : nodes_) {
    json e;
    e["branch_id"] = n.branch_id;
    e["parent"] = n.parent < 0 ? json(nullptr) : json(nodes_[static_cast<std::size_t>(n.parent)].branch_id);
    e["fired"] = n.fired < 0 ? json(nullptr) : json(n.fired + 1);
    e["position"] = scalars(n.position);
    nodes.push_back(std::move(e));
  }
  return {{"cursor", nodes_[static_cast<std::size_t>(cursor_)].branch_id}, {"nodes", std::move(nodes)}};
}

json analysis_json(const EGCMGraph& g) {
  const int n = g.size();
  json out;
  out["n"] = n;
  out["mode"] = g.mode() == NumericMode::exact ? "exact" : "float";

  json m = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int j = 0; j < n; ++j) {
      if (i == j) row.push_back(nullptr);
      else if (is_infinite(g.bond_order(i, j))) row.push_back("inf");
      else row.push_back(g.bond_order(i, j));
    }
    m.push_back(std::move(row));
  }
  out["m"] = std::move(m);

  json components = json::array();
  json unital = json::array();
  json f_values = json::array();
  for (const auto& c : g.components()) {
    components.push_back(one_based(c));
    const bool u = is_unital_on_cyclic(g, c);
    unital.push_back(u);
    f_values.push_back(u ? json(f_value(g, c)) : json(nullptr));
  }
  out["components"] = std::move(components);
  out["unital"] = std::move(unital);
  out["f_values"] = std::move(f_values);

  json asym = json::array();
  for (const auto& [i, j] : g.odd_asymmetries()) asym.push_back({i + 1, j + 1});
  out["odd_asymmetries"] = std::move(asym);

  out["matrix_type"] = g.is_connected() ? json(to_string(classify_matrix_type(g))) : json(nullptr);

  json smult = json::array();
  for (int x = 0; x < n; ++x) {
    const SMultSet s = s_mult(g, x);
    json e{{"node", x + 1}, {"finite", s.finite}};
    if (s.finite) {
      json ks = json::array();
      for (const Scalar& k : s.multiples) ks.push_back(k.to_string());
      e["K_values"] = std::move(ks);
    } else {
      e["certificate"] = one_based(s.certificate->nodes);
    }
    smult.push_back(std::move(e));
  }
  out["s_mult"] = std::move(smult);
  return out;
}

GameService::GameService(ServiceConfig config) : config_(config), rng_(std::random_device{}()) {}

std::size_t GameService::session_count() const {
  std::lock_guard lock(store_mutex_);
  return sessions_.size();
}

std::string GameService::new_id() {
  char buf[17];
  for (;;) {
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng_()));
    if (!sessions_.contains(buf)) return buf;
  }
}

void GameService::evict_locked() {
  const auto now = Clock::now();
  while (!lru_.empty()) {
    const std::string& oldest = lru_.back();
    const Entry& e = sessions_.at(oldest);
    const bool idle = now - e.last_used > config_.idle_timeout;
    if (!idle && sessions_.size() < config_.max_sessions) break;
    sessions_.erase(oldest);
    lru_.pop_back();
  }
}

std::shared_ptr<GameSession> GameService::lookup(const std::string& id) {
  std::lock_guard lock(store_mutex_);
  evict_locked();
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "no session \"" + id + "\"");
  lru_.splice(lru_.begin(), lru_, it->second.lru);
  it->second.last_used = Clock::now();
  return it->second.session;
}

ApiResponse GameService::create_session(const json& body) {
  if (!body.contains("graph")) throw Error(ErrorCode::InvalidArgument, "missing \"graph\"");
  auto graph = std::make_shared<const EGCMGraph>(build_graph(parse_graph_json(body["graph"])));
  Position initial = body.contains("position") ? parse_position(*graph, body["position"])
                                               : ones_vector(graph->size());
  if (graph->mode() == NumericMode::floating) initial = in_mode(initial, NumericMode::floating, graph->tolerance());

  std::lock_guard lock(store_mutex_);
  evict_locked();
  const std::string id = new_id();
  auto session = std::make_shared<GameSession>(id, std::move(graph), std::move(initial));
  lru_.push_front(id);
  sessions_.emplace(id, Entry{session, lru_.begin(), Clock::now()});
  std::lock_guard session_lock(session->mutex());
  return {201, json{{"id", id}, {"state", session->state()}}};
}

ApiResponse GameService::handle(const std::string& method, const std::string& path, const std::string& body_text) {
  static const std::regex session_re(R"(^/api/sessions/([A-Za-z0-9]+)(?:/([a-z]+))?/?$)");
  try {
    json body = json::object();
    if (!body_text.empty()) {
      try {
        body = json::parse(body_text);
      } catch (const json::parse_error& e) {
        return error_response(400, "JsonError", e.what());
      }
      if (!body.is_object()) return error_response(400, "JsonError", "request body must be an object");
    }

    if (path == "/api/health" && method == "GET") return {200, json{{"status", "ok"}}};
    if (path == "/api/analyze" && method == "POST") {
      if (!body.contains("graph")) throw Error(ErrorCode::InvalidArgument, "missing \"graph\"");
      return {200, analysis_json(build_graph(parse_graph_json(body["graph"])))};
    }
    if ((path == "/api/sessions" || path == "/api/sessions/") && method == "POST") return create_session(body);

    std::smatch m;
    if (std::regex_match(path, m, session_re)) {
      const std::string action = m[2].str();
      const bool get = method == "GET";
      const bool post = method == "POST";
      if (!((get && (action.empty() || action == "history")) ||
            (post && (action == "fire" || action == "undo" || action == "jump" || action == "auto" ||
                      action == "analyze")))) {
        return error_response(404, "NotFound", method + " " + path);
      }
      const std::shared_ptr<GameSession> session = lookup(m[1].str());
      std::lock_guard lock(session->mutex());
      if (action.empty()) return {200, session->state()};
      if (action == "history") return {200, session->history()};
      if (action == "analyze") return {200, analysis_json(session->graph())};
      if (action == "fire") {
        if (!body.contains("node") || !body["node"].is_number_integer()) {
          throw Error(ErrorCode::InvalidArgument, "missing integer \"node\"");
        }
        session->fire(body["node"].get<int>() - 1);
        return {200, session->state()};
      }
      if (action == "undo") {
        session->undo();
        return {200, session->state()};
      }
      if (action == "jump") {
        if (!body.contains("branch_id") || !body["branch_id"].is_string()) {
          throw Error(ErrorCode::InvalidArgument, "missing string \"branch_id\"");
        }
        session->jump(body["branch_id"].get<std::string>());
        return {200, session->state()};
      }
      const int max_steps = body.value("max_steps", config_.max_auto_steps);
      if (max_steps < 0 || max_steps > config_.max_auto_steps) {
        throw Error(ErrorCode::InvalidArgument,
                    "max_steps must lie in 0.." + std::to_string(config_.max_auto_steps));
      }
      const PlayOutcome outcome = session->autoplay(parse_strategy(body), max_steps);
      json s = session->state();
      s["outcome"] = to_string(outcome);
      return {200, std::move(s)};
    }
    return error_response(404, "NotFound", method + " " + path);
  } catch (const Error& e) {
    return error_response(status_for(e.code()), to_string(e.code()), e.what());
  } catch (const json::exception& e) {
    return error_response(400, "JsonError", e.what());
  }
}

void mount(httplib::Server& server, GameService& service) {
  auto handler = [&service](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse r = service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get(R"(/api/.*)", handler);
  server.Post(R"(/api/.*)", handler);
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

int resolve_port(std::optional<int> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("COXROOT_PORT")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 65536) return static_cast<int>(v);
  }
  return kDefaultPort;
}

bool serve(GameService& service, const std::string& host, int port) {
  httplib::Server server;
  mount(server, service);
  return server.listen(host, port);
}

}  // namespace coxroot
