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
#include "esid/graph/graph.h"
#include "esid/utils/error.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace esid
{

bool is_district_id(std::string_view id)
{
    return id.size() == 5 && std::all_of(id.begin(), id.end(), [](char c) {
               return c >= '0' && c <= '9';
           });
}

void GraphModel::validate() const
{
    const std::size_t groups = age_groups.size();
    if (groups == 0) {
        throw ValidationError("graph: age groups are missing");
    }
    if (nodes.empty()) {
        throw ValidationError("graph: at least one district is required");
    }
    std::set<std::string> ids;
    for (const auto& node : nodes) {
        const auto& d = node.district;
        if (!is_district_id(d.id)) {
            throw ValidationError("graph: district id '" + d.id + "' must be 5 digits");
        }
        if (!ids.insert(d.id).second) {
            throw ValidationError("graph: duplicate district id '" + d.id + "'");
        }
        if (d.population.size() != groups) {
            throw ValidationError("graph: district " + d.id + " population needs one entry per age group");
        }
        for (double p : d.population) {
            if (!std::isfinite(p) || p < 0) {
                throw ValidationError("graph: district " + d.id + " population must be finite and >= 0");
            }
        }
        if (node.initial.num_groups() != groups) {
            throw ValidationError("graph: district " + d.id + " initial state has wrong number of groups");
        }
        check_tensor(node.initial, "graph: district " + d.id + " initial state");
        for (const auto& damping : node.local_dampings) {
            validate_damping(damping, groups);
        }
    }
    contacts.validate(groups);
    for (const auto& damping : dampings) {
        validate_damping(damping, groups);
    }
    for (const auto& e : edges) {
        if (e.from == e.to) {
            throw ValidationError("graph: edge " + e.from + " -> " + e.to + " must connect different districts");
        }
        if (!ids.count(e.from) || !ids.count(e.to)) {
            throw ValidationError("graph: edge " + e.from + " -> " + e.to + " references an unknown district");
        }
        if (e.commuters.size() != groups) {
            throw ValidationError("graph: edge " + e.from + " -> " + e.to + " needs one commuter count per age group");
        }
        for (double c : e.commuters) {
            if (!std::isfinite(c) || c < 0) {
                throw ValidationError("graph: edge " + e.from + " -> " + e.to + " commuters must be finite and >= 0");
            }
        }
    }
}

std::optional<std::size_t> GraphModel::find(std::string_view district_id) const
{
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].district.id == district_id) {
            return i;
        }
    }
    return std::nullopt;
}

std::vector<IndexedEdge> GraphModel::indexed_edges() const
{
    std::vector<IndexedEdge> out;
    out.reserve(edges.size());
    for (const auto& e : edges) {
        auto from = find(e.from);
        auto to   = find(e.to);
        if (!from || !to) {
            throw ValidationError("graph: edge " + e.from + " -> " + e.to + " references an unknown district");
        }
        out.push_back({*from, *to, e.commuters});
    }
    return out;
}

std::vector<District> GraphModel::districts() const
{
    std::vector<District> out;
    out.reserve(nodes.size());
    for (const auto& n : nodes) {
        out.push_back(n.district);
    }
    return out;
}

ExchangeResult mobility_exchange(std::span<const CompartmentTensor> states, std::span<const IndexedEdge> edges)
{
    ExchangeResult result{std::vector<CompartmentTensor>(states.begin(), states.end()), 0};
    if (states.empty()) {
        return result;
    }
    const std::size_t groups = states[0].num_groups();

    // canonical order makes the floating point accumulation independent of the input order
    std::vector<const IndexedEdge*> order;
    order.reserve(edges.size());
    for (const auto& e : edges) {
        order.push_back(&e);
    }
    std::sort(order.begin(), order.end(), [](const IndexedEdge* a, const IndexedEdge* b) {
        return *a < *b;
    });

    auto mobile_mass = [&](std::size_t district, std::size_t g) {
        double p = 0;
        for (auto c : kMobileCompartments) {
            p += states[district](g, c);
        }
        return p;
    };

    std::vector<std::vector<double>> demand(states.size(), std::vector<double>(groups, 0.0));
    for (const auto* e : order) {
        for (std::size_t g = 0; g < groups; ++g) {
            demand[e->from][g] += e->commuters[g];
        }
    }
    // scale < 1 shrinks the outflow of over-demanded (district, group) pairs
    std::vector<std::vector<double>> scale(states.size(), std::vector<double>(groups, 1.0));
    for (std::size_t m = 0; m < states.size(); ++m) {
        for (std::size_t g = 0; g < groups; ++g) {
            double p = mobile_mass(m, g);
            if (demand[m][g] > p) {
                scale[m][g] = demand[m][g] > 0 ? p / demand[m][g] : 0.0;
                ++result.clamped;
            }
        }
    }

    // outflows and inflows are summed separately so mirrored districts round identically
    std::vector<CompartmentTensor> outflow(states.size(), CompartmentTensor(groups));
    std::vector<CompartmentTensor> inflow(states.size(), CompartmentTensor(groups));
    for (const auto* e : order) {
        for (std::size_t g = 0; g < groups; ++g) {
            double p = mobile_mass(e->from, g);
            if (p <= 0 || e->commuters[g] <= 0) {
                continue;
            }
            double share = e->commuters[g] * scale[e->from][g] / p;
            for (auto c : kMobileCompartments) {
                double flux = share * states[e->from](g, c);
                outflow[e->from](g, c) += flux;
                inflow[e->to](g, c) += flux;
            }
        }
    }
    for (std::size_t m = 0; m < states.size(); ++m) {
        for (std::size_t g = 0; g < groups; ++g) {
            for (auto c : kMobileCompartments) {
                // a full outflow can leave a negative residue of a few ulp
                double stay            = std::max(0.0, states[m](g, c) - outflow[m](g, c));
                result.states[m](g, c) = stay + inflow[m](g, c);
            }
        }
    }
    return result;
}

GraphTrajectory simulate_graph(const GraphModel& model, const EpiParameters& params, int num_days, double dt)
{
    model.validate();
    if (num_days < 1) {
        throw ValidationError("simulation: num_days must be >= 1");
    }
    if (params.size() != model.age_groups.size()) {
        throw ValidationError("simulation: parameters must have one entry per age group");
    }
    validate_parameters(params);
    steps_per_day(dt);

    const auto edges = model.indexed_edges();
    const std::size_t n = model.nodes.size();

    std::vector<std::vector<Damping>> schedules(n, model.dampings);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& local = model.nodes[i].local_dampings;
        schedules[i].insert(schedules[i].end(), local.begin(), local.end());
    }

    GraphTrajectory out;
    out.states.resize(n);
    std::vector<CompartmentTensor> current;
    current.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.states[i].reserve(static_cast<std::size_t>(num_days) + 1);
        out.states[i].push_back(model.nodes[i].initial);
        current.push_back(model.nodes[i].initial);
    }

    for (int day = 0; day < num_days; ++day) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                current[i] = advance_day(current[i], params, model.contacts, schedules[i], day, dt);
            }
            catch (const Error& e) {
                throw Error(e.code(), "district " + model.nodes[i].district.id + ": " + e.what());
            }
        }
        if (!edges.empty()) {
            auto exchanged = mobility_exchange(current, edges);
            current        = std::move(exchanged.states);
            out.clamped_exchanges += exchanged.clamped;
        }
        for (std::size_t i = 0; i < n; ++i) {
            out.states[i].push_back(current[i]);
        }
    }
    return out;
}

} // namespace esid
