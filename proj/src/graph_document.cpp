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

#include "coxroot/graph_document.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "coxroot/error.hpp"

namespace coxroot {

namespace {

using nlohmann::json;

[[noreturn]] void json_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::JsonError, where + ": " + what);
}

int node_index(const json& e, const char* key, int n, const std::string& where) {
  if (!e.contains(key) || !e[key].is_number_integer()) json_error(where, std::string("missing integer \"") + key + "\"");
  const int v = e[key].get<int>();
  if (v < 1 || v > n) json_error(where, std::string("\"") + key + "\" out of range 1.." + std::to_string(n));
  return v;
}

}  // namespace

GraphDocument parse_graph_json(const json& j) {
  if (!j.is_object()) json_error("$", "graph document must be an object");
  GraphDocument doc;
  if (!j.contains("n") || !j["n"].is_number_integer()) json_error("$.n", "missing integer");
  doc.n = j["n"].get<int>();
  if (doc.n < 1) json_error("$.n", "must be >= 1");

  if (j.contains("labels")) {
    const json& labels = j["labels"];
    if (!labels.is_array() || static_cast<int>(labels.size()) != doc.n) {
      json_error("$.labels", "must be an array of n strings");
    }
    for (const json& l : labels) {
      if (!l.is_string()) json_error("$.labels", "must be an array of n strings");
      doc.labels.push_back(l.get<std::string>());
    }
  }

  if (!j.contains("entries") || !j["entries"].is_array()) json_error("$.entries", "missing array");
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < j["entries"].size(); ++k) {
    const json& e = j["entries"][k];
    const std::string where = "$.entries[" + std::to_string(k) + "]";
    if (!e.is_object()) json_error(where, "must be an object");
    GraphDocument::Entry entry;
    entry.i = node_index(e, "i", doc.n, where);
    entry.j = node_index(e, "j", doc.n, where);
    if (!seen.insert({entry.i, entry.j}).second) json_error(where, "duplicate entry");
    if (!e.contains("value")) json_error(where, "missing \"value\"");
    if (e["value"].is_string()) {
      entry.value = e["value"].get<std::string>();
    } else if (e["value"].is_number_integer()) {
      entry.value = std::to_string(e["value"].get<long long>());
    } else {
      json_error(where + ".value", "must be a string");
    }
    Scalar::parse(entry.value, NumericMode::exact);  // syntax check only
    doc.entries.push_back(std::move(entry));
  }

  if (j.contains("mode")) {
    const json& m = j["mode"];
    if (m == "exact") doc.mode = NumericMode::exact;
    else if (m == "float") doc.mode = NumericMode::floating;
    else json_error("$.mode", "must be \"exact\" or \"float\"");
  }
  if (j.contains("tolerance")) {
    if (!j["tolerance"].is_number() || j["tolerance"].get<double>() <= 0) {
      json_error("$.tolerance", "must be a positive number");
    }
    doc.tolerance = j["tolerance"].get<double>();
  }
  return doc;
}

GraphDocument parse_graph_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::JsonError, e.what());
  }
  return parse_graph_json(j);
}

GraphDocument parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph_text(buf.str());
}

json to_json(const GraphDocument& doc) {
  json j;
  j["n"] = doc.n;
  if (!doc.labels.empty()) j["labels"] = doc.labels;
  j["entries"] = json::array();
  for (const auto& e : doc.entries) j["entries"].push_back({{"i", e.i}, {"j", e.j}, {"value", e.value}});
  if (doc.mode) j["mode"] = *doc.mode == NumericMode::exact ? "exact" : "float";
  if (doc.tolerance) j["tolerance"] = *doc.tolerance;
  return j;
}

RawEntryTable to_raw_table(const GraphDocument& doc) {
  RawEntryTable t;
  const auto n = static_cast<std::size_t>(doc.n);
  t.entries.assign(n, std::vector<std::string>(n, "0"));
  for (std::size_t k = 0; k < n; ++k) t.entries[k][k] = "2";
  for (const auto& e : doc.entries) {
    t.entries[static_cast<std::size_t>(e.i - 1)][static_cast<std::size_t>(e.j - 1)] = e.value;
  }
  t.labels = doc.labels;
  return t;
}

GraphConfig config_of(const GraphDocument& doc) {
  GraphConfig c;
  c.mode = doc.mode;
  if (doc.tolerance) c.tolerance = *doc.tolerance;
  return c;
}

EGCMGraph build_graph(const GraphDocument& doc) { return validate_and_build(to_raw_table(doc), config_of(doc)); }

GraphDocument to_document(const EGCMGraph& g) {
  GraphDocument doc;
  doc.n = g.size();
  doc.labels = g.labels();
  for (int i = 0; i < g.size(); ++i) {
    for (int j = 0; j < g.size(); ++j) {
      if (i != j && !g.entry(i, j).is_zero()) doc.entries.push_back({i + 1, j + 1, g.entry(i, j).to_string()});
    }
  }
  doc.mode = g.mode();
  if (g.mode() == NumericMode::floating) doc.tolerance = g.tolerance();
  return doc;
}

}  // namespace coxroot
