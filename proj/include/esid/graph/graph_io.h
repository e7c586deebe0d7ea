/*
* Copyright (C) 2026 ESID contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#ifndef ESID_GRAPH_GRAPH_IO_H
#define ESID_GRAPH_GRAPH_IO_H

#include "esid/graph/graph.h"

#include "json.hpp"

#include <filesystem>

namespace esid
{

/**
 * Parses a graph document (see docs/graph_format.md). Dampings are not part of the graph
 * file; they come from the scenario.
 */
GraphModel graph_from_json(const nlohmann::json& doc);

/// Inverse of graph_from_json. Initial states are written out in full.
nlohmann::json to_json(const GraphModel& graph);

GraphModel read_graph(const std::filesystem::path& path);

} // namespace esid

#endif // ESID_GRAPH_GRAPH_IO_H
