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
#ifndef ESID_GRAPH_GRAPH_H
#define ESID_GRAPH_GRAPH_H

#include "esid/epi/compartments.h"
#include "esid/epi/model.h"
#include "esid/epi/parameters.h"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace esid
{

/// A county/district, keyed by its 5-digit zero-padded id.
struct District {
    std::string id;
    std::string name;
    std::vector<double> population; ///< persons per age group

    bool operator==(const District&) const = default;
};

/// True for exactly five ASCII digits.
bool is_district_id(std::string_view id);

struct MobilityEdge {
    std::string from;
    std::string to;
    std::vector<double> commuters; ///< persons per day per age group

    bool operator==(const MobilityEdge&) const = default;
};

/// Mobility edge with endpoints resolved to district positions.
struct IndexedEdge {
    std::size_t from = 0;
    std::size_t to   = 0;
    std::vector<double> commuters;

    auto operator<=>(const IndexedEdge&) const = default;
};

struct GraphNode {
    District district;
    CompartmentTensor initial;
    std::vector<Damping> local_dampings; ///< applied in addition to the shared schedule

    bool operator==(const GraphNode&) const = default;
};

struct GraphModel {
    AgeGroupSpec age_groups;
    std::vector<GraphNode> nodes;
    std::vector<MobilityEdge> edges;
    ContactMatrices contacts;
    std::vector<Damping> dampings;

    /// Throws ValidationError on dangling edges, duplicate ids or shape mismatches.
    void validate() const;

    std::optional<std::size_t> find(std::string_view district_id) const;

    /// Edges with resolved endpoints; throws ValidationError for unknown ids.
    std::vector<IndexedEdge> indexed_edges() const;

    std::vector<District> districts() const;

    bool operator==(const GraphModel&) const = default;
};

/// Compartments that commute. Symptomatic, severe, critical and dead persons stay home.
inline constexpr std::array<Compartment, 4> kMobileCompartments = {Compartment::Susceptible, Compartment::Exposed,
                                                                   Compartment::Carrier, Compartment::Recovered};

struct ExchangeResult {
    std::vector<CompartmentTensor> states;
    std::size_t clamped = 0; ///< number of (district, group) pairs whose outflow exceeded the mobile mass
};

/**
 * Moves commuters along all edges at once. Each edge m -> n carries commuters * X_m / P_m of every
 * mobile compartment X, where P_m is the mobile mass, computed from the pre-exchange state.
 * If a district's outgoing demand exceeds its mobile mass, its edges are scaled down proportionally.
 * The result does not depend on the order of `edges`.
 */
ExchangeResult mobility_exchange(std::span<const CompartmentTensor> states, std::span<const IndexedEdge> edges);

struct GraphTrajectory {
    /// states[district][day] for day 0..num_days
    std::vector<std::vector<CompartmentTensor>> states;
    std::size_t clamped_exchanges = 0;
};

/**
 * Simulates all districts. Every day integrates each district independently and then applies
 * one mobility exchange.
 */
GraphTrajectory simulate_graph(const GraphModel& model, const EpiParameters& params, int num_days,
                               double dt = kDefaultDt);

} // namespace esid

#endif // ESID_GRAPH_GRAPH_H
