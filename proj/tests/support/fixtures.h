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
#ifndef ESID_TESTS_FIXTURES_H
#define ESID_TESTS_FIXTURES_H

#include "esid/ensemble/scenario.h"
#include "esid/epi/compartments.h"
#include "esid/epi/parameters.h"
#include "esid/graph/graph.h"

#include <filesystem>
#include <random>
#include <string>

namespace esid::testing
{

/// Removes the directory on destruction.
class TempDir
{
public:
    explicit TempDir(const std::string& prefix = "esid-test")
    {
        std::random_device rd;
        auto base = std::filesystem::temp_directory_path();
        do {
            m_path = base / (prefix + "-" + std::to_string(rd()));
        } while (std::filesystem::exists(m_path));
        std::filesystem::create_directories(m_path);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(m_path, ec);
    }
    TempDir(const TempDir&)            = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const
    {
        return m_path;
    }
    std::filesystem::path operator/(const std::string& name) const
    {
        return m_path / name;
    }

private:
    std::filesystem::path m_path;
};

inline AgeGroupSpec one_group()
{
    return AgeGroupSpec({{"all", 0, 99}});
}

inline AgeGroupSpec two_groups()
{
    return AgeGroupSpec({{"0-59", 0, 59}, {"60+", 60, 99}});
}

/// Contacts spread over the four locations so that each entry of the total equals `total`.
inline ContactMatrices uniform_contacts(std::size_t groups, double total)
{
    ContactMatrices c(groups);
    c[Location::Home]   = ContactMatrix(groups, 0.3 * total);
    c[Location::School] = ContactMatrix(groups, 0.2 * total);
    c[Location::Work]   = ContactMatrix(groups, 0.3 * total);
    c[Location::Other]  = ContactMatrix(groups, 0.2 * total);
    return c;
}

inline Damping all_locations(std::string id, double strength, int start, int end)
{
    Damping d;
    d.id        = std::move(id);
    d.locations.set();
    d.strength  = strength;
    d.start_day = start;
    d.end_day   = end;
    return d;
}

/// A small outbreak: mostly susceptible with a few exposed and infectious persons per group.
inline CompartmentTensor seeded_state(std::size_t groups, double population, double infectious)
{
    CompartmentTensor t(groups);
    for (std::size_t g = 0; g < groups; ++g) {
        t(g, Compartment::Exposed)  = infectious;
        t(g, Compartment::Carrier)  = infectious;
        t(g, Compartment::Infected) = infectious;
        t(g, Compartment::Susceptible) = population - 3 * infectious;
    }
    return t;
}

/// The 4-district, 2-group toy graph (Cologne/Bonn region) with symmetric commuting.
inline GraphModel toy_graph()
{
    GraphModel g;
    g.age_groups = two_groups();
    g.contacts   = ContactMatrices(2);
    g.contacts[Location::Home]   = ContactMatrix(2, 1.0);
    g.contacts[Location::School] = ContactMatrix(2, 0.5);
    g.contacts[Location::Work]   = ContactMatrix(2, 1.2);
    g.contacts[Location::Other]  = ContactMatrix(2, 1.1);
    g.contacts[Location::School](0, 0) = 3.0;
    g.contacts[Location::Home](1, 1)   = 1.8;

    struct Spec {
        const char* id;
        const char* name;
        double young, old, seed;
    };
    const Spec specs[] = {
        {"05315", "Köln", 820000, 265000, 900},
        {"05111", "Düsseldorf", 465000, 155000, 0},
        {"05314", "Bonn", 250000, 80000, 150},
        {"05382", "Rhein-Sieg-Kreis", 440000, 160000, 0},
    };
    for (const auto& s : specs) {
        GraphNode node;
        node.district = {s.id, s.name, {s.young, s.old}};
        node.initial  = CompartmentTensor(2);
        for (std::size_t grp = 0; grp < 2; ++grp) {
            double pop = node.district.population[grp];
            double inf = grp == 0 ? s.seed : s.seed / 4;
            node.initial(grp, Compartment::Exposed)     = inf;
            node.initial(grp, Compartment::Carrier)     = inf / 2;
            node.initial(grp, Compartment::Infected)    = inf / 2;
            node.initial(grp, Compartment::Susceptible) = pop - 2 * inf;
        }
        g.nodes.push_back(std::move(node));
    }
    auto edge = [&](const char* a, const char* b, double young, double old) {
        g.edges.push_back({a, b, {young, old}});
        g.edges.push_back({b, a, {young, old}});
    };
    edge("05382", "05315", 38000, 2500);
    edge("05314", "05315", 16000, 1200);
    edge("05382", "05314", 30000, 2000);
    edge("05111", "05315", 21000, 1500);
    return g;
}

/// Nondegenerate ranges around the default parameters.
inline ParameterRanges toy_ranges(std::size_t groups)
{
    GroupParameterRanges r = fixed_ranges(GroupParameters{});
    auto widen = [&](std::string_view name, double lo, double hi) {
        for (std::size_t i = 0; i < parameter_fields().size(); ++i) {
            if (parameter_fields()[i].name == name) {
                r[i] = {lo, hi};
            }
        }
    };
    widen("latent_days", 4.6, 5.8);
    widen("nonsymptomatic_days", 3.8, 4.6);
    widen("transmission_probability", 0.045, 0.055);
    widen("symptomatic_fraction", 0.65, 0.75);
    return ParameterRanges(groups, r);
}

inline ScenarioDefinition toy_scenario(std::string id, std::size_t members = 32)
{
    ScenarioDefinition s;
    s.id          = std::move(id);
    s.name        = "Toy " + s.id;
    s.color       = "blue";
    s.num_days    = 100;
    s.members     = members;
    s.seed        = 2021;
    s.parameters  = toy_ranges(2);
    return s;
}

} // namespace esid::testing

#endif // ESID_TESTS_FIXTURES_H
