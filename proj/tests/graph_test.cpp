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
#include "support/fixtures.h"

#include "esid/epi/model.h"
#include "esid/graph/graph.h"
#include "esid/graph/graph_io.h"
#include "esid/utils/error.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace esid
{
namespace
{

using testing::one_group;
using testing::seeded_state;
using testing::toy_graph;
using testing::uniform_contacts;

GraphModel pair_graph(const CompartmentTensor& a, const CompartmentTensor& b, double ab, double ba)
{
    GraphModel g;
    g.age_groups = one_group();
    g.contacts   = uniform_contacts(1, 10);
    g.nodes.push_back({{"01001", "A", {a.group_total(0)}}, a, {}});
    g.nodes.push_back({{"01002", "B", {b.group_total(0)}}, b, {}});
    if (ab > 0) {
        g.edges.push_back({"01001", "01002", {ab}});
    }
    if (ba > 0) {
        g.edges.push_back({"01002", "01001", {ba}});
    }
    return g;
}

double national(const GraphTrajectory& t, int day)
{
    double sum = 0;
    for (const auto& d : t.states) {
        sum += d[day].total();
    }
    return sum;
}

TEST(MobilityExchange, FluxIsProportionalToMobileCompartments)
{
    CompartmentTensor a(1), b(1);
    a(0, Compartment::Susceptible) = 800;
    a(0, Compartment::Recovered)   = 200;
    a(0, Compartment::Infected)    = 50; // does not commute
    b(0, Compartment::Susceptible) = 500;
    std::vector<CompartmentTensor> states{a, b};
    std::vector<IndexedEdge> edges{{0, 1, {100}}};
    auto out = mobility_exchange(states, edges);
    EXPECT_DOUBLE_EQ(out.states[0](0, Compartment::Susceptible), 720);
    EXPECT_DOUBLE_EQ(out.states[0](0, Compartment::Recovered), 180);
    EXPECT_DOUBLE_EQ(out.states[0](0, Compartment::Infected), 50);
    EXPECT_DOUBLE_EQ(out.states[1](0, Compartment::Susceptible), 580);
    EXPECT_DOUBLE_EQ(out.states[1](0, Compartment::Recovered), 20);
    EXPECT_EQ(out.clamped, 0u);
}

TEST(MobilityExchange, SymmetricExchangeLeavesIdenticalDistrictsUnchanged)
{
    auto s = seeded_state(1, 10000, 40);
    std::vector<CompartmentTensor> states{s, s};
    std::vector<IndexedEdge> edges{{0, 1, {500}}, {1, 0, {500}}};
    auto out = mobility_exchange(states, edges);
    EXPECT_EQ(out.states[0], s);
    EXPECT_EQ(out.states[1], s);
}

TEST(MobilityExchange, OverDemandIsScaledAndCounted)
{
    CompartmentTensor a(1), b(1), c(1);
    a(0, Compartment::Susceptible) = 60;
    a(0, Compartment::Exposed)     = 40;
    std::vector<CompartmentTensor> states{a, b, c};
    std::vector<IndexedEdge> edges{{0, 1, {150}}, {0, 2, {50}}};
    auto out = mobility_exchange(states, edges);
    EXPECT_EQ(out.clamped, 1u);
    EXPECT_NEAR(out.states[0](0, Compartment::Susceptible), 0.0, 1e-12);
    EXPECT_NEAR(out.states[0](0, Compartment::Exposed), 0.0, 1e-12);
    EXPECT_DOUBLE_EQ(out.states[1](0, Compartment::Susceptible), 45);
    EXPECT_DOUBLE_EQ(out.states[2](0, Compartment::Exposed), 10);
    for (const auto& s : out.states) {
        for (double v : s.values()) {
            EXPECT_GE(v, 0.0);
        }
    }
}

TEST(MobilityExchange, PropertyGlobalTotalsConserved)
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 6, groups = 1 + rng() % 3;
        std::vector<CompartmentTensor> states(n, CompartmentTensor(groups));
        for (auto& s : states) {
            for (double& v : s.values()) {
                v = rng() % 5 == 0 ? 0.0 : 1e5 * unit(rng);
            }
        }
        std::vector<IndexedEdge> edges;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j && rng() % 2) {
                    std::vector<double> commuters(groups);
                    for (double& c : commuters) {
                        c = 1e5 * unit(rng); // frequently over-demanded
                    }
                    edges.push_back({i, j, commuters});
                }
            }
        }
        auto out = mobility_exchange(states, edges);
        for (std::size_t g = 0; g < groups; ++g) {
            for (auto c : kAllCompartments) {
                double before = 0, after = 0;
                for (std::size_t d = 0; d < n; ++d) {
                    before += states[d](g, c);
                    after += out.states[d](g, c);
                    EXPECT_GE(out.states[d](g, c), 0.0);
                }
                EXPECT_LE(std::abs(after - before), 1e-12 * std::max(1.0, before));
            }
        }
    }
}

TEST(MobilityExchange, PropertyEdgeOrderDoesNotMatter)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 5;
        std::vector<CompartmentTensor> states(n, CompartmentTensor(2));
        for (auto& s : states) {
            for (double& v : s.values()) {
                v = 1e4 * unit(rng);
            }
        }
        std::vector<IndexedEdge> edges;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) {
                    edges.push_back({i, j, {3e3 * unit(rng), 3e3 * unit(rng)}});
                }
            }
        }
        auto reference = mobility_exchange(states, edges).states;
        std::shuffle(edges.begin(), edges.end(), rng);
        EXPECT_EQ(mobility_exchange(states, edges).states, reference);
    }
}

TEST(SimulateGraph, SingleDistrictMatchesSimulateNode)
{
    GraphModel g;
    g.age_groups = one_group();
    g.contacts   = uniform_contacts(1, 10);
    auto init    = seeded_state(1, 5000, 20);
    g.nodes.push_back({{"05315", "Köln", {5000}}, init, {}});
    g.dampings.push_back(testing::all_locations("d", 0.4, 5, 15));
    EpiParameters params{GroupParameters{}};
    auto graph_run = simulate_graph(g, params, 30);
    auto node_run  = simulate_node(init, params, g.contacts, g.dampings, 30);
    EXPECT_EQ(graph_run.states[0], node_run);
}

TEST(SimulateGraph, ZeroCommutersDecouplesDistricts)
{
    auto g = toy_graph();
    for (auto& e : g.edges) {
        std::fill(e.commuters.begin(), e.commuters.end(), 0.0);
    }
    g.nodes[2].local_dampings.push_back(testing::all_locations("local", 0.3, 3, 9));
    EpiParameters params(2);
    auto run = simulate_graph(g, params, 20);
    for (std::size_t d = 0; d < g.nodes.size(); ++d) {
        auto schedule = g.dampings;
        schedule.insert(schedule.end(), g.nodes[d].local_dampings.begin(), g.nodes[d].local_dampings.end());
        EXPECT_EQ(run.states[d], simulate_node(g.nodes[d].initial, params, g.contacts, schedule, 20)) << d;
    }
}

TEST(SimulateGraph, IdenticalDistrictsWithSymmetricEdgesStayIdentical)
{
    auto s   = seeded_state(1, 20000, 30);
    auto g   = pair_graph(s, s, 700, 700);
    auto run = simulate_graph(g, EpiParameters{GroupParameters{}}, 50);
    EXPECT_EQ(run.states[0], run.states[1]);
}

TEST(SimulateGraph, EdgePermutationIsBitIdentical)
{
    auto g         = toy_graph();
    EpiParameters params(2);
    auto reference = simulate_graph(g, params, 40);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(g.edges.begin(), g.edges.end(), rng);
        auto run = simulate_graph(g, params, 40);
        EXPECT_EQ(run.states, reference.states);
    }
}

TEST(SimulateGraph, InfectionReachesDiseaseFreeNeighbourWithinTwoDays)
{
    auto a = seeded_state(1, 10000, 100);
    CompartmentTensor b(1);
    b(0, Compartment::Susceptible) = 10000;
    auto run = simulate_graph(pair_graph(a, b, 200, 0), EpiParameters{GroupParameters{}}, 2);
    EXPECT_EQ(run.states[1][0](0, Compartment::Exposed), 0.0);
    EXPECT_GT(run.states[1][2](0, Compartment::Exposed), 0.0);
}

TEST(SimulateGraph, NationalPopulationConservedOverHundredDays)
{
    auto g   = toy_graph();
    auto run = simulate_graph(g, EpiParameters(2), 100);
    const double total = national(run, 0);
    for (int day = 1; day <= 100; ++day) {
        EXPECT_LE(std::abs(national(run, day) - total), 1e-9 * total);
        for (const auto& d : run.states) {
            EXPECT_GE(d[day](0, Compartment::Dead), d[day - 1](0, Compartment::Dead));
            EXPECT_GE(d[day](1, Compartment::Dead), d[day - 1](1, Compartment::Dead));
        }
    }
}

TEST(SimulateGraph, ErrorsNameTheDistrict)
{
    auto g = toy_graph();
    g.nodes[1].initial = CompartmentTensor(2);
    g.nodes[1].initial(0, Compartment::Dead) = 10; // nobody alive in either group
    g.nodes[1].district.population = {10, 0};
    g.edges.clear();
    try {
        simulate_graph(g, EpiParameters(2), 5);
        FAIL();
    }
    catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Validation);
        EXPECT_NE(std::string(e.what()).find("district 05111"), std::string::npos) << e.what();
    }
}

TEST(GraphModel, ValidationRejectsBrokenGraphs)
{
    auto g = toy_graph();
    EXPECT_NO_THROW(g.validate());

    auto dangling = g;
    dangling.edges.push_back({"05315", "09999", {1, 1}});
    EXPECT_THROW(dangling.validate(), ValidationError);

    auto self = g;
    self.edges.push_back({"05315", "05315", {1, 1}});
    EXPECT_THROW(self.validate(), ValidationError);

    auto dup = g;
    dup.nodes[1].district.id = "05315";
    EXPECT_THROW(dup.validate(), ValidationError);

    auto bad_id = g;
    bad_id.nodes[0].district.id = "5315";
    EXPECT_THROW(bad_id.validate(), ValidationError);

    auto negative = g;
    negative.edges[0].commuters[0] = -1;
    EXPECT_THROW(negative.validate(), ValidationError);

    GraphModel empty;
    empty.age_groups = one_group();
    EXPECT_THROW(empty.validate(), ValidationError);
}

TEST(GraphIo, JsonRoundTrip)
{
    auto g = toy_graph();
    EXPECT_EQ(graph_from_json(to_json(g)), g);
}

TEST(GraphIo, SusceptibleDefaultsToTheRemainder)
{
    auto doc = nlohmann::json::parse(R"({
        "age_groups": [{"label": "all", "min_age": 0, "max_age": 99}],
        "contacts": {"home": 2, "school": 1, "work": 3, "other": 4},
        "districts": [{"id": "05315", "name": "Köln", "population": [1000], "initial": {"E": [10], "I": [5]}}]
    })");
    auto g = graph_from_json(doc);
    EXPECT_EQ(g.nodes[0].initial(0, Compartment::Susceptible), 985);
    EXPECT_EQ(g.contacts.total()(0, 0), 10);
    EXPECT_TRUE(g.edges.empty());

    doc["districts"][0]["initial"]["S"] = {900};
    EXPECT_THROW(graph_from_json(doc), ValidationError);
    doc["districts"][0]["initial"]["S"] = {985};
    EXPECT_NO_THROW(graph_from_json(doc));
    doc["districts"][0]["initial"]["Q"] = {1};
    EXPECT_THROW(graph_from_json(doc), ValidationError);
}

TEST(GraphIo, MissingFileIsNotFound)
{
    EXPECT_THROW(read_graph("/nonexistent/graph.json"), NotFoundError);
}

TEST(GraphIo, ToyDataLoads)
{
    auto g = read_graph(std::string(ESID_DATA_DIR) + "/toy/graph.json");
    EXPECT_EQ(g.nodes.size(), 4u);
    EXPECT_EQ(g.age_groups.size(), 2u);
    EXPECT_EQ(g.nodes[0].district.name, "Köln");
    EXPECT_NO_THROW(g.validate());
}

} // namespace
} // namespace esid
