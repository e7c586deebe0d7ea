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

#include "esid/ensemble/scenario.h"
#include "esid/graph/graph_io.h"
#include "esid/utils/error.h"

#include <gtest/gtest.h>

#include <fstream>

namespace esid
{
namespace
{

namespace fs = std::filesystem;

const fs::path kToy = fs::path(ESID_DATA_DIR) / "toy";

nlohmann::json read_json(const fs::path& path)
{
    std::ifstream in(path);
    return nlohmann::json::parse(in);
}

nlohmann::json minimal()
{
    return {{"id", "mini"}, {"start_date", "2021-03-01"}, {"num_days", 20}};
}

TEST(Scenario, ShippedScenariosRoundTripAndValidate)
{
    auto graph = read_graph(kToy / "graph.json");
    int count  = 0;
    for (const auto& entry : fs::directory_iterator(kToy / "scenarios")) {
        auto s = scenario_from_json(read_json(entry.path()), graph.age_groups);
        EXPECT_NO_THROW(validate_scenario(s, graph)) << entry.path();
        EXPECT_EQ(scenario_from_json(to_json(s, graph.age_groups), graph.age_groups), s) << entry.path();
        EXPECT_EQ(s.graph, "../graph.json");
        ++count;
    }
    EXPECT_EQ(count, 4);
}

TEST(Scenario, Defaults)
{
    auto s = scenario_from_json(minimal(), testing::two_groups());
    EXPECT_EQ(s.name, "mini");
    EXPECT_EQ(s.members, kDefaultMembers);
    EXPECT_EQ(s.seed, 0u);
    EXPECT_EQ(s.dt, kDefaultDt);
    EXPECT_TRUE(s.dampings.empty());
    EXPECT_EQ(s.parameters.size(), 2u);
}

TEST(Scenario, UnnamedDampingsGetPositionalIds)
{
    auto doc        = minimal();
    doc["dampings"] = nlohmann::json::parse(R"([
        {"locations": "all", "strength": 0.2, "start_day": 0, "end_day": 5},
        {"id": "work", "locations": ["work"], "strength": 0.3, "start_day": 2, "end_day": 9},
        {"locations": ["home"], "strength": 0.1, "start_day": 1, "end_day": 4}
    ])");
    auto s = scenario_from_json(doc, testing::two_groups());
    ASSERT_EQ(s.dampings.size(), 3u);
    EXPECT_EQ(s.dampings[0].id, "d0");
    EXPECT_EQ(s.dampings[1].id, "work");
    EXPECT_EQ(s.dampings[2].id, "d2");
}

TEST(Scenario, DuplicateDampingIdsAreRejected)
{
    auto s = testing::toy_scenario("dup");
    s.dampings.push_back(testing::all_locations("x", 0.1, 0, 5));
    s.dampings.push_back(testing::all_locations("x", 0.2, 5, 10));
    try {
        validate_scenario(s, testing::toy_graph());
        FAIL();
    }
    catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("duplicate id 'x'"), std::string::npos);
    }
}

TEST(Scenario, FieldErrorsNameTheField)
{
    auto groups = testing::two_groups();
    auto expect = [&](nlohmann::json doc, const std::string& field) {
        try {
            scenario_from_json(doc, groups);
            ADD_FAILURE() << "accepted " << doc.dump();
        }
        catch (const ValidationError& e) {
            EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
        }
    };
    auto doc = minimal();
    doc["id"] = "a/b";
    expect(doc, "scenario.id");
    doc             = minimal();
    doc["num_days"] = 0;
    expect(doc, "scenario.num_days");
    doc            = minimal();
    doc["members"] = 0;
    expect(doc, "scenario.members");
    doc               = minimal();
    doc["start_date"] = "2021-02-30";
    expect(doc, "scenario.start_date");
    doc = minimal();
    doc.erase("num_days");
    expect(doc, "num_days");
    doc                  = minimal();
    doc["local_dampings"] = nlohmann::json::array();
    expect(doc, "scenario.local_dampings");
}

TEST(Scenario, LocalDampingsMustNameKnownDistricts)
{
    auto s = testing::toy_scenario("local");
    s.local_dampings["99999"].push_back(testing::all_locations("x", 0.1, 0, 5));
    EXPECT_THROW(validate_scenario(s, testing::toy_graph()), ValidationError);
    s.local_dampings.clear();
    s.local_dampings["05315"].push_back(testing::all_locations("x", 0.1, 0, 5));
    EXPECT_NO_THROW(validate_scenario(s, testing::toy_graph()));
    auto applied = apply_scenario(testing::toy_graph(), s);
    EXPECT_EQ(applied.nodes[0].local_dampings.size(), 1u);
}

} // namespace
} // namespace esid
