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

#include "coxroot/cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "coxroot/error.hpp"
#include "coxroot/game_service.hpp"
#include "coxroot/geom_rep.hpp"
#include "coxroot/graph_document.hpp"
#include "coxroot/numbers_game.hpp"
#include "coxroot/roots.hpp"

namespace coxroot {

using nlohmann::json;

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

// "1,2,s3" -> {0, 1, 2}
std::vector<int> parse_nodes(const EGCMGraph& g, const std::string& text) {
  std::vector<int> nodes;
  for (std::string t : split_list(text)) {
    if (!t.empty() && (t[0] == 's' || t[0] == 'S')) t.erase(0, 1);
    int v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "not a node: \"" + t + "\"");
    }
    g.check_node(v - 1);
    nodes.push_back(v - 1);
  }
  return nodes;
}

Vector parse_vector(const EGCMGraph& g, const std::string& text) {
  const std::vector<std::string> parts = split_list(text);
  if (static_cast<int>(parts.size()) != g.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "expected " + std::to_string(g.size()) + " values, got " + std::to_string(parts.size()));
  }
  Vector v(g.size());
  for (int k = 0; k < g.size(); ++k) v(k) = Scalar::parse(parts[static_cast<std::size_t>(k)], g.mode(), g.tolerance());
  return v;
}

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

std::string word_text(const std::vector<int>& application_order) {
  if (application_order.empty()) return "e";
  std::string s;
  for (int v : application_order) s += (s.empty() ? "s" : " s") + std::to_string(v + 1);
  return s;
}

std::string join_nodes(const std::vector<int>& nodes) {
  std::string s;
  for (int v : nodes) s += (s.empty() ? "" : ",") + std::to_string(v + 1);
  return s;
}

struct Context {
  std::ostream& out;
  bool as_json = false;
  std::string file;
  EGCMGraph graph() const { return build_graph(parse_graph_file(file)); }
  void emit(const json& j, const std::string& text) const {
    if (as_json) out << j.dump() << '\n';
    else out << text;
  }
};

void cmd_validate(const Context& c) {
  const EGCMGraph g = c.graph();
  const std::string mode = g.mode() == NumericMode::exact ? "exact" : "float";
  c.emit({{"valid", true}, {"n", g.size()}, {"mode", mode}},
         "valid: n=" + std::to_string(g.size()) + ", mode " + mode + "\n");
}

void cmd_classify(const Context& c) {
  const EGCMGraph g = c.graph();
  const json a = analysis_json(g);
  json j;
  j["type"] = a["matrix_type"];
  j["m"] = a["m"];
  j["components"] = a["components"];
  j["unital"] = a["unital"];
  j["f_values"] = a["f_values"];
  j["odd_asymmetries"] = a["odd_asymmetries"];

  std::ostringstream s;
  s << "type: " << (a["matrix_type"].is_null() ? "n/a (not connected)" : a["matrix_type"].get<std::string>()) << "\n";
  s << "bond orders:\n";
  for (int i = 0; i < g.size(); ++i) {
    s << " ";
    for (int j2 = 0; j2 < g.size(); ++j2) {
      const json& m = a["m"][static_cast<std::size_t>(i)][static_cast<std::size_t>(j2)];
      s << ' ' << (m.is_null() ? std::string("-") : m.is_string() ? m.get<std::string>() : std::to_string(m.get<int>()));
    }
    s << "\n";
  }
  for (std::size_t k = 0; k < g.components().size(); ++k) {
    s << "component {" << join_nodes(g.components()[k]) << "}: "
      << (a["unital"][k].get<bool>() ? "unital, f = " + std::to_string(a["f_values"][k].get<int>()) : std::string("not unital"))
      << "\n";
  }
  s << "odd asymmetries:";
  if (g.odd_asymmetries().empty()) s << " none";
  for (const auto& [i, j2] : g.odd_asymmetries()) s << " (" << i + 1 << "," << j2 + 1 << ")";
  s << "\n";
  c.emit(j, s.str());
}

json roots_json(const RootSet& rs) {
  json list = json::array();
  for (const Root& r : rs.roots()) {
    list.push_back({{"coords", scalars(r.coords)},
                    {"witness", one_based(r.witness.application_order())},
                    {"node", r.node + 1},
                    {"positive", r.positive}});
  }
  return {{"exhausted", rs.exhausted()},
          {"count", rs.size()},
          {"positive_count", rs.positive_count()},
          {"ray_classes", rs.ray_classes().size()},
          {"roots", std::move(list)}};
}

void cmd_roots(const Context& c, const RootLimits& limits) {
  const EGCMGraph g = c.graph();
  const RootSet rs = enumerate_roots(g, limits);
  std::ostringstream s;
  s << (rs.exhausted() ? "exhausted" : "not exhausted") << ": " << rs.size() << " roots, "
    << rs.positive_count() << " positive, " << rs.ray_classes().size() << " ray classes\n";
  for (const Root* r : rs.positives()) {
    s << "  " << to_string(r->coords) << "  = " << word_text(r->witness.application_order())
      << " applied to a" << r->node + 1 << "\n";
  }
  c.emit(roots_json(rs), s.str());
}

void cmd_smult(const Context& c, int node) {
  const EGCMGraph g = c.graph();
  g.check_node(node - 1);
  const SMultSet sm = s_mult(g, node - 1);
  json j{{"node", node}, {"finite", sm.finite}};
  std::ostringstream s;
  if (sm.finite) {
    json ks = json::array();
    s << "S(a" << node << ") = {";
    for (std::size_t k = 0; k < sm.multiples.size(); ++k) {
      ks.push_back(sm.multiples[k].to_string());
      s << (k ? ", " : "") << sm.multiples[k] << " a" << node;
    }
    s << "}\n";
    j["K_values"] = std::move(ks);
  } else {
    j["certificate"] = one_based(sm.certificate->nodes);
    s << "S(a" << node << ") is infinite; non-unital ON-cycle " << join_nodes(sm.certificate->nodes) << "\n";
  }
  c.emit(j, s.str());
}

void cmd_inversions(const Context& c, const std::string& word) {
  const EGCMGraph g = c.graph();
  const GroupWord w = GroupWord::from_application_order(parse_nodes(g, word));
  const InversionSet inv = inversion_set(g, w);
  const NBoundsReport b = n_bounds_report(g, w);
  json roots = json::array();
  for (const Vector& v : inv.roots) roots.push_back(scalars(v));
  json j{{"word", one_based(inv.word.application_order())},
         {"length", b.length},
         {"count", inv.size()},
         {"f1", b.f1},
         {"f2", b.f2},
         {"lower", b.lower},
         {"upper", b.upper},
         {"roots", std::move(roots)}};
  std::ostringstream s;
  s << "|N(w)| = " << inv.size() << " for l(w) = " << b.length << "; bounds " << b.lower << " <= "
    << inv.size() << " <= " << b.upper << "\n";
  for (const Vector& v : inv.roots) s << "  " << to_string(v) << "\n";
  c.emit(j, s.str());
}

void cmd_reduce(const Context& c, const std::string& word) {
  const EGCMGraph g = c.graph();
  const GroupWord w = GroupWord::from_application_order(parse_nodes(g, word));
  const Reduction r = word_length_and_reduce(g, w);
  json j{{"input", one_based(w.application_order())},
         {"reduced", one_based(r.reduced.application_order())},
         {"length", r.length},
         {"precision_warning", r.precision_warning}};
  std::string text = "length " + std::to_string(r.length) + ": " + word_text(r.reduced.application_order()) + "\n";
  if (r.precision_warning) text += "warning: long word in float mode; rounding may accumulate\n";
  c.emit(j, text);
}

void cmd_factor(const Context& c, const std::string& word, int node) {
  const EGCMGraph g = c.graph();
  g.check_node(node - 1);
  const GroupWord w = GroupWord::from_application_order(parse_nodes(g, word));
  const auto f = factor_scalar_action(g, w, node - 1);
  if (!f) {
    c.emit({{"scalar_multiple", false}},
           "w.a" + std::to_string(node) + " is not a multiple of a simple root\n");
    return;
  }
  json er = json::array();
  for (const ERSequence& e : f->er_sequences) er.push_back({{"root", e.root + 1}, {"partners", one_based(e.partners)}});
  const GroupWord expanded = f->expand(g);
  json j{{"scalar_multiple", true},
         {"path", one_based(f->path.nodes)},
         {"er_sequences", std::move(er)},
         {"sign", f->sign},
         {"K", f->multiplier.to_string()},
         {"target", f->target + 1},
         {"expanded", one_based(expanded.application_order())},
         {"length", f->length_from_bonds(g)}};
  std::ostringstream s;
  s << "w.a" << node << " = " << (f->sign < 0 ? "-" : "") << f->multiplier << " a" << f->target + 1 << "\n";
  s << "ON-path: " << join_nodes(f->path.nodes) << "\n";
  for (const ERSequence& e : f->er_sequences) {
    if (!e.partners.empty()) s << "ER at " << e.root + 1 << ": " << join_nodes(e.partners) << "\n";
  }
  s << "expanded: " << word_text(expanded.application_order()) << " (length " << f->length_from_bonds(g) << ")\n";
  c.emit(j, s.str());
}

void cmd_dominance(const Context& c, const std::string& alpha, const std::string& beta, int bound) {
  const EGCMGraph g = c.graph();
  const DominanceResult r = dominance_test(g, parse_vector(g, alpha), parse_vector(g, beta), bound);
  json j{{"dominates_up_to_bound", r.dominates_up_to_bound}, {"bound", bound}};
  j["witness"] = r.witness ? one_based(r.witness->application_order()) : json(nullptr);
  c.emit(j, r.dominates_up_to_bound
                ? "dominates up to length " + std::to_string(bound) + "\n"
                : "does not dominate; witness " + word_text(r.witness->application_order()) + "\n");
}

void cmd_game(const Context& c, const std::string& position, const std::string& strategy, std::uint64_t seed,
              int max_steps, const std::optional<std::string>& moves) {
  const EGCMGraph g = c.graph();
  const Position start = parse_vector(g, position);
  Strategy st = FirstLegal{};
  if (moves) st = UserSequence{parse_nodes(g, *moves)};
  else if (strategy == "random") st = RandomLegal{seed};
  else if (strategy != "first_legal") throw Error(ErrorCode::InvalidArgument, "unknown strategy \"" + strategy + "\"");
  const PlayRecord rec = play(g, start, st, max_steps);
  const bool reduced = word_length_and_reduce(g, rec.word()).length == rec.steps();
  json j{{"outcome", to_string(rec.outcome)},
         {"steps", rec.steps()},
         {"fired", one_based(rec.fired)},
         {"final", scalars(rec.final)},
         {"reduced", reduced}};
  std::ostringstream s;
  switch (rec.outcome) {
    case PlayOutcome::terminated: s << "terminated in " << rec.steps() << " steps"; break;
    case PlayOutcome::step_limit: s << "no termination within " << rec.steps() << " steps"; break;
    case PlayOutcome::stuck_never: s << "moves ended after " << rec.steps() << " steps, not terminal"; break;
  }
  s << "; word " << word_text(rec.fired) << (reduced ? " reduced" : " not reduced") << "\n";
  s << "final position " << to_string(rec.final) << "\n";
  c.emit(j, s.str());
}

void cmd_cone(const Context& c, const std::string& position, int max_steps, bool force_play) {
  const EGCMGraph g = c.graph();
  const ConeMembership m = tits_cone_member(g, parse_vector(g, position), max_steps, force_play);
  c.emit({{"membership", to_string(m)}}, std::string(to_string(m)) + "\n");
}

void cmd_finite(const Context& c, int max_steps) {
  const EGCMGraph g = c.graph();
  const FiniteReport r = finite_group_test(g, max_steps);
  json j{{"verdict", to_string(r.verdict)}, {"steps", r.record.steps()}};
  j["type"] = r.type ? json(to_string(*r.type)) : json(nullptr);
  std::string text = std::string(to_string(r.verdict)) + " (" + std::to_string(r.record.steps()) + " steps";
  if (r.type) text += ", type " + std::string(to_string(*r.type));
  c.emit(j, text + ")\n");
}

void cmd_bounds(const Context& c, const RootLimits& limits) {
  const EGCMGraph g = c.graph();
  const PositiveRootBounds b = positive_root_bounds(g, limits);
  json j{{"count", b.count}, {"std_count", b.std_count}, {"f1", b.f1}, {"f2", b.f2}, {"longest_length", b.longest_length}};
  std::ostringstream s;
  s << "|positive roots| = " << b.count << ", standard = " << b.std_count << ", f1 = " << b.f1
    << ", f2 = " << b.f2 << ", longest element length = " << b.longest_length << "\n";
  c.emit(j, s.str());
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"coxroot: Coxeter groups from E-generalized Cartan matrices"};
  app.require_subcommand(1);
  Context ctx{out, false, {}};
  app.add_flag("--json", ctx.as_json, "Machine-readable output");

  std::function<void()> action;
  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    if (std::string(name) != "serve") s->add_option("graph", ctx.file, "Graph JSON file")->required();
    return s;
  };

  sub("validate", "Check a graph file")->callback([&] { action = [&] { cmd_validate(ctx); }; });
  sub("classify", "Matrix type, bonds, components, unital flags")->callback([&] { action = [&] { cmd_classify(ctx); }; });

  RootLimits limits;
  auto* roots = sub("roots", "Enumerate the root system");
  roots->add_option("--max-length", limits.max_length, "Witness length bound")->check(CLI::NonNegativeNumber);
  roots->add_option("--max-count", limits.max_count, "Root count bound")->check(CLI::PositiveNumber);
  roots->callback([&] { action = [&] { cmd_roots(ctx, limits); }; });

  auto* bounds = sub("bounds", "Positive root counts of a finite group");
  bounds->add_option("--max-length", limits.max_length)->check(CLI::NonNegativeNumber);
  bounds->add_option("--max-count", limits.max_count)->check(CLI::PositiveNumber);
  bounds->callback([&] { action = [&] { cmd_bounds(ctx, limits); }; });

  int node = 1;
  auto* smult = sub("smult", "Root multiples of a simple root");
  smult->add_option("--node", node, "Node (1-based)")->required();
  smult->callback([&] { action = [&] { cmd_smult(ctx, node); }; });

  std::string word;
  auto* inv = sub("inversions", "Inversion set of a word");
  inv->add_option("--word", word, "Letters in application order, e.g. 1,2")->required();
  inv->callback([&] { action = [&] { cmd_inversions(ctx, word); }; });

  auto* red = sub("reduce", "Length and a reduced word");
  red->add_option("--word", word)->required();
  red->callback([&] { action = [&] { cmd_reduce(ctx, word); }; });

  auto* fac = sub("factor", "Factor w when w.a_node is a multiple of a simple root");
  fac->add_option("--word", word)->required();
  fac->add_option("--node", node)->required();
  fac->callback([&] { action = [&] { cmd_factor(ctx, word, node); }; });

  std::string alpha, beta;
  int bound = 6;
  auto* dom = sub("dominance", "Bounded dominance search");
  dom->add_option("--alpha", alpha, "Coordinates, e.g. 1,0")->required();
  dom->add_option("--beta", beta)->required();
  dom->add_option("--bound", bound)->check(CLI::NonNegativeNumber);
  dom->callback([&] { action = [&] { cmd_dominance(ctx, alpha, beta, bound); }; });

  std::string position, strategy = "first_legal";
  std::uint64_t seed = 0;
  int max_steps = kDefaultMaxSteps;
  std::optional<std::string> moves;
  auto* game = sub("game", "Play the numbers game");
  game->add_option("--position", position, "Initial values, e.g. 1,1")->required();
  game->add_option("--strategy", strategy)->check(CLI::IsMember({"first_legal", "random"}));
  game->add_option("--seed", seed);
  game->add_option("--max-steps", max_steps)->check(CLI::NonNegativeNumber);
  game->add_option("--moves", moves, "Fire these nodes in order");
  game->callback([&] { action = [&] { cmd_game(ctx, position, strategy, seed, max_steps, moves); }; });

  bool force_play = false;
  auto* cone = sub("cone", "Tits cone membership of a position");
  cone->add_option("--position", position)->required();
  cone->add_option("--max-steps", max_steps)->check(CLI::NonNegativeNumber);
  cone->add_flag("--play", force_play, "Skip closed forms");
  cone->callback([&] { action = [&] { cmd_cone(ctx, position, max_steps, force_play); }; });

  auto* fin = sub("finite", "Finite group test");
  fin->add_option("--max-steps", max_steps)->check(CLI::NonNegativeNumber);
  fin->callback([&] { action = [&] { cmd_finite(ctx, max_steps); }; });

  std::optional<int> port;
  std::string host = "127.0.0.1";
  auto* srv = sub("serve", "Run the HTTP service");
  srv->add_option("--port", port, "Port (default $COXROOT_PORT or 8733)")->check(CLI::Range(1, 65535));
  srv->add_option("--host", host);
  srv->callback([&] {
    action = [&] {
      GameService service;
      const int p = resolve_port(port);
      err << "listening on http://" << host << ":" << p << "\n";
      if (!serve(service, host, p)) throw Error(ErrorCode::IoError, "cannot listen on port " + std::to_string(p));
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    action();
  } catch (const Error& e) {
    if (ctx.as_json) out << json{{"code", to_string(e.code())}, {"detail", e.what()}}.dump() << '\n';
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace coxroot
