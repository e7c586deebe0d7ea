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
#include "esid/ensemble/scenario.h"
#include "esid/epi/epi_io.h"
#include "esid/utils/error.h"
#include "esid/utils/json_util.h"

#include <algorithm>
#include <set>

namespace esid
{

using nlohmann::json;

bool is_scenario_id(std::string_view id)
{
    return !id.empty() && id.size() <= 64 && std::all_of(id.begin(), id.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    });
}

void validate_scenario(const ScenarioDefinition& s, const GraphModel& graph)
{
    if (!is_scenario_id(s.id)) {
        throw ValidationError("scenario.id: must be 1-64 characters of [A-Za-z0-9_-]");
    }
    if (s.num_days < 1) {
        throw ValidationError("scenario.num_days: must be >= 1");
    }
    if (s.members < 1) {
        throw ValidationError("scenario.members: must be >= 1");
    }
    steps_per_day(s.dt);
    validate_ranges(s.parameters, graph.age_groups);
    std::set<std::string> ids;
    for (const auto& d : s.dampings) {
        validate_damping(d, graph.age_groups.size());
        if (!ids.insert(d.id).second) {
            throw ValidationError("scenario.dampings: duplicate id '" + d.id + "'");
        }
    }
    for (const auto& [district, dampings] : s.local_dampings) {
        if (!graph.find(district)) {
            throw ValidationError("scenario.local_dampings: unknown district '" + district + "'");
        }
        for (const auto& d : dampings) {
            validate_damping(d, graph.age_groups.size());
        }
    }
}

namespace
{

std::vector<Damping> dampings_from_json(const json& value, const AgeGroupSpec& groups, const std::string& path)
{
    if (!value.is_array()) {
        throw ValidationError(path + ": expected an array");
    }
    std::vector<Damping> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        auto item_path = path + "[" + std::to_string(i) + "]";
        out.push_back(damping_from_json(value[i], groups, "d" + std::to_string(i), item_path));
    }
    return out;
}

json dampings_to_json(const std::vector<Damping>& dampings, const AgeGroupSpec& groups)
{
    json out = json::array();
    for (const auto& d : dampings) {
        out.push_back(to_json(d, groups));
    }
    return out;
}

} // namespace

ScenarioDefinition scenario_from_json(const json& doc, const AgeGroupSpec& groups)
{
    ScenarioDefinition s;
    s.id = get_string(doc, "id", "scenario");
    if (!is_scenario_id(s.id)) {
        throw ValidationError("scenario.id: must be 1-64 characters of [A-Za-z0-9_-]");
    }
    s.name        = doc.contains("name") ? get_string(doc, "name", "scenario") : s.id;
    s.description = doc.contains("description") ? get_string(doc, "description", "scenario") : "";
    s.color       = doc.contains("color") ? get_string(doc, "color", "scenario") : "";
    s.start_date  = parse_date_or_throw(get_string(doc, "start_date", "scenario"), "scenario.start_date");
    s.num_days    = get_int(doc, "num_days", "scenario");
    if (s.num_days < 1) {
        throw ValidationError("scenario.num_days: must be >= 1");
    }
    if (doc.contains("members")) {
        auto k = get_uint64(doc, "members", "scenario");
        if (k < 1) {
            throw ValidationError("scenario.members: must be >= 1");
        }
        s.members = static_cast<std::size_t>(k);
    }
    if (doc.contains("seed")) {
        s.seed = get_uint64(doc, "seed", "scenario");
    }
    if (doc.contains("dt")) {
        s.dt = get_number(doc, "dt", "scenario");
        steps_per_day(s.dt);
    }
    s.graph = scenario_graph_reference(doc);

    ParameterRanges defaults(groups.size(), fixed_ranges(GroupParameters{}));
    s.parameters = ranges_from_json(doc.contains("parameters") ? doc["parameters"] : json(), groups, defaults);

    if (doc.contains("dampings")) {
        s.dampings = dampings_from_json(doc["dampings"], groups, "scenario.dampings");
    }
    if (doc.contains("local_dampings")) {
        const auto& local = doc["local_dampings"];
        if (!local.is_object()) {
            throw ValidationError("scenario.local_dampings: expected an object keyed by district id");
        }
        for (const auto& [district, list] : local.items()) {
            s.local_dampings[district] = dampings_from_json(list, groups, "scenario.local_dampings." + district);
        }
    }
    return s;
}

json to_json(const ScenarioDefinition& s, const AgeGroupSpec& groups)
{
    json local = json::object();
    for (const auto& [district, list] : s.local_dampings) {
        local[district] = dampings_to_json(list, groups);
    }
    return {{"id", s.id},
            {"name", s.name},
            {"description", s.description},
            {"color", s.color},
            {"start_date", format_date(s.start_date)},
            {"num_days", s.num_days},
            {"members", s.members},
            {"seed", s.seed},
            {"dt", s.dt},
            {"graph", s.graph},
            {"parameters", ranges_to_json(s.parameters)},
            {"dampings", dampings_to_json(s.dampings, groups)},
            {"local_dampings", std::move(local)}};
}

std::string scenario_graph_reference(const json& doc)
{
    if (doc.is_object() && doc.contains("graph")) {
        return get_string(doc, "graph", "scenario");
    }
    return "";
}

GraphModel apply_scenario(const GraphModel& graph, const ScenarioDefinition& scenario)
{
    GraphModel out = graph;
    out.dampings   = scenario.dampings;
    for (auto& node : out.nodes) {
        auto it = scenario.local_dampings.find(node.district.id);
        node.local_dampings = it != scenario.local_dampings.end() ? it->second : std::vector<Damping>{};
    }
    return out;
}

} // namespace esid
