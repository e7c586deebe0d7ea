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
#include "esid/graph/graph_io.h"
#include "esid/epi/epi_io.h"
#include "esid/utils/error.h"
#include "esid/utils/json_util.h"

#include <cmath>

namespace esid
{

using nlohmann::json;

namespace
{

std::vector<double> per_group(const json& value, std::size_t groups, const std::string& path)
{
    auto v = get_number_array(value, path);
    if (v.size() != groups) {
        throw ValidationError(path + ": expected " + std::to_string(groups) + " entries (one per age group)");
    }
    return v;
}

CompartmentTensor initial_state(const json& district, const District& d, std::size_t groups, const std::string& path)
{
    CompartmentTensor state(groups);
    bool has_susceptible = false;
    if (district.contains("initial")) {
        const auto& init = district["initial"];
        if (!init.is_object()) {
            throw ValidationError(path + ".initial: expected an object keyed by compartment code");
        }
        for (const auto& [key, value] : init.items()) {
            auto c = parse_compartment(key);
            if (!c) {
                throw ValidationError(path + ".initial: unknown compartment '" + key + "'");
            }
            auto counts = per_group(value, groups, path + ".initial." + key);
            for (std::size_t g = 0; g < groups; ++g) {
                state(g, *c) = counts[g];
            }
            has_susceptible |= *c == Compartment::Susceptible;
        }
    }
    for (std::size_t g = 0; g < groups; ++g) {
        if (!has_susceptible) {
            state(g, Compartment::Susceptible) = d.population[g] - state.group_total(g);
            if (state(g, Compartment::Susceptible) < 0) {
                throw ValidationError(path + ".initial: infected counts exceed the population of group " +
                                      std::to_string(g));
            }
        }
        else if (std::abs(state.group_total(g) - d.population[g]) > 1e-9 * std::max(1.0, d.population[g])) {
            throw ValidationError(path + ".initial: compartments of group " + std::to_string(g) +
                                  " do not sum to the population");
        }
    }
    check_tensor(state, path + ".initial");
    return state;
}

} // namespace

GraphModel graph_from_json(const json& doc)
{
    GraphModel graph;
    graph.age_groups         = age_groups_from_json(require(doc, "age_groups", ""));
    const std::size_t groups = graph.age_groups.size();
    graph.contacts           = contacts_from_json(require(doc, "contacts", ""), groups);

    const auto& districts = require(doc, "districts", "");
    if (!districts.is_array()) {
        throw ValidationError("districts: expected an array");
    }
    for (std::size_t i = 0; i < districts.size(); ++i) {
        auto path = "districts[" + std::to_string(i) + "]";
        GraphNode node;
        node.district.id         = get_string(districts[i], "id", path);
        node.district.name       = get_string(districts[i], "name", path);
        node.district.population = per_group(require(districts[i], "population", path), groups, path + ".population");
        node.initial             = initial_state(districts[i], node.district, groups, path);
        graph.nodes.push_back(std::move(node));
    }

    if (doc.contains("edges")) {
        const auto& edges = doc["edges"];
        if (!edges.is_array()) {
            throw ValidationError("edges: expected an array");
        }
        for (std::size_t i = 0; i < edges.size(); ++i) {
            auto path = "edges[" + std::to_string(i) + "]";
            MobilityEdge e;
            e.from      = get_string(edges[i], "from", path);
            e.to        = get_string(edges[i], "to", path);
            e.commuters = per_group(require(edges[i], "commuters", path), groups, path + ".commuters");
            graph.edges.push_back(std::move(e));
        }
    }
    graph.validate();
    return graph;
}

json to_json(const GraphModel& graph)
{
    json districts = json::array();
    for (const auto& node : graph.nodes) {
        json initial = json::object();
        for (auto c : kAllCompartments) {
            json counts = json::array();
            for (std::size_t g = 0; g < node.initial.num_groups(); ++g) {
                counts.push_back(node.initial(g, c));
            }
            initial[std::string(compartment_code(c))] = std::move(counts);
        }
        districts.push_back({{"id", node.district.id},
                             {"name", node.district.name},
                             {"population", node.district.population},
                             {"initial", std::move(initial)}});
    }
    json edges = json::array();
    for (const auto& e : graph.edges) {
        edges.push_back({{"from", e.from}, {"to", e.to}, {"commuters", e.commuters}});
    }
    return {{"age_groups", to_json(graph.age_groups)},
            {"contacts", to_json(graph.contacts)},
            {"districts", std::move(districts)},
            {"edges", std::move(edges)}};
}

GraphModel read_graph(const std::filesystem::path& path)
{
    auto doc = read_json_file(path);
    try {
        return graph_from_json(doc);
    }
    catch (const ValidationError& e) {
        throw ValidationError(path.filename().string() + ": " + e.what());
    }
}

} // namespace esid
