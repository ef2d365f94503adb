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

// JSON graph files:
//   {"n": 2, "labels": ["a", "b"],
//    "entries": [{"i": 1, "j": 2, "value": "-1"}, ...],
//    "mode": "exact" | "float", "tolerance": 1e-9}
// Nodes are 1-based. Omitted off-diagonal entries are 0.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxroot/egcm_graph.hpp"

namespace coxroot {

struct GraphDocument {
  struct Entry {
    int i = 1;
    int j = 1;
    std::string value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  int n = 0;
  std::vector<std::string> labels;
  std::vector<Entry> entries;
  std::optional<NumericMode> mode;
  std::optional<double> tolerance;

  friend bool operator==(const GraphDocument&, const GraphDocument&) = default;
};

/// Syntax-level checks only; throws JsonError or ValueSyntaxError.
GraphDocument parse_graph_json(const nlohmann::json& j);
GraphDocument parse_graph_text(const std::string& text);
/// Adds IoError for unreadable files.
GraphDocument parse_graph_file(const std::string& path);

nlohmann::json to_json(const GraphDocument& doc);

RawEntryTable to_raw_table(const GraphDocument& doc);
GraphConfig config_of(const GraphDocument& doc);
EGCMGraph build_graph(const GraphDocument& doc);

/// Document listing every nonzero off-diagonal entry of g.
GraphDocument to_document(const EGCMGraph& g);

}  // namespace coxroot
