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
#ifndef ESID_ENSEMBLE_SCENARIO_H
#define ESID_ENSEMBLE_SCENARIO_H

#include "esid/ensemble/parameter_ranges.h"
#include "esid/epi/model.h"
#include "esid/epi/parameters.h"
#include "esid/graph/graph.h"
#include "esid/utils/date.h"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace esid
{

/// Ensemble size used when a scenario does not specify one.
inline constexpr std::size_t kDefaultMembers = 32;

/**
 * A named simulation configuration; one scenario card in the dashboard.
 */
struct ScenarioDefinition {
    std::string id;
    std::string name;
    std::string description;
    std::string color; ///< display hint, e.g. "blue" or "#3b5bdb"
    Date start_date{std::chrono::year{2021}, std::chrono::month{1}, std::chrono::day{1}};
    int num_days = 100;
    ParameterRanges parameters;
    std::vector<Damping> dampings;
    std::map<std::string, std::vector<Damping>> local_dampings; ///< by district id, added to `dampings`
    std::string graph; ///< reference to the graph file, informational once loaded
    std::size_t members = kDefaultMembers;
    std::uint64_t seed = 0;
    double dt = kDefaultDt;

    bool operator==(const ScenarioDefinition&) const = default;
};

/// Scenario ids are used in paths and URLs: 1-64 characters of [A-Za-z0-9_-].
bool is_scenario_id(std::string_view id);

/// Throws ValidationError naming the offending field.
void validate_scenario(const ScenarioDefinition& scenario, const GraphModel& graph);

ScenarioDefinition scenario_from_json(const nlohmann::json& doc, const AgeGroupSpec& groups);
nlohmann::json to_json(const ScenarioDefinition& scenario, const AgeGroupSpec& groups);

/// Reads the "graph" field of a scenario file without parsing the rest.
std::string scenario_graph_reference(const nlohmann::json& doc);

/// The graph with the scenario's damping schedule and local dampings applied.
GraphModel apply_scenario(const GraphModel& graph, const ScenarioDefinition& scenario);

} // namespace esid

#endif // ESID_ENSEMBLE_SCENARIO_H
