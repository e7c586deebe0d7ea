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

#include "esid/ensemble/ensemble.h"
#include "esid/ensemble/random.h"
#include "esid/utils/error.h"

#include <gtest/gtest.h>

namespace esid
{
namespace
{

using testing::toy_graph;
using testing::toy_scenario;

ScenarioDefinition short_scenario(std::size_t members, int days = 30)
{
    auto s     = toy_scenario("toy", members);
    s.num_days = days;
    return s;
}

EnsembleOptions fixed_options(std::size_t threads = 0)
{
    EnsembleOptions o;
    o.threads = threads;
    o.created = "2026-01-01T00:00:00Z";
    return o;
}

TEST(Ensemble, MetadataLabelsIncludeAggregates)
{
    auto g    = toy_graph();
    auto meta = make_metadata(short_scenario(4), g, fixed_options());
    ASSERT_EQ(meta.districts.size(), 5u);
    EXPECT_EQ(meta.districts.back().id, kNationalDistrict);
    EXPECT_EQ(meta.groups, (std::vector<std::string>{"0-59", "60+", "total"}));
    EXPECT_EQ(meta.members, 4u);
    EXPECT_EQ(meta.run_id, "toy");
    EXPECT_EQ(meta.num_days, 30);
}

TEST(Ensemble, SingleMemberCollapsesAllBandsToTheMemberRun)
{
    auto g        = toy_graph();
    auto scenario = short_scenario(1);
    auto result   = run_ensemble(scenario, g, fixed_options());

    RandomStream rng(scenario.seed, 0);
    auto params = sample_parameters(scenario.parameters, rng);
    auto member = flatten_with_aggregates(simulate_graph(apply_scenario(g, scenario), params, scenario.num_days), 2);

    for (std::size_t p = 0; p < kNumPercentiles; ++p) {
        for (std::size_t d = 0; d < result.num_districts(); ++d) {
            for (int day = 0; day <= scenario.num_days; ++day) {
                auto block = result.block(p, d, day);
                auto ref   = result.block(0, d, day);
                for (std::size_t i = 0; i < block.size(); ++i) {
                    ASSERT_EQ(block[i], ref[i]);
                    ASSERT_EQ(block[i], member[result.index(0, d, day, 0, Compartment::Susceptible) + i]);
                }
            }
        }
    }
}

TEST(Ensemble, DegenerateRangesGiveZeroWidthBands)
{
    auto g        = toy_graph();
    auto scenario = short_scenario(6);
    scenario.parameters.assign(2, fixed_ranges(GroupParameters{}));
    auto result = run_ensemble(scenario, g, fixed_options());
    for (std::size_t d = 0; d < result.num_districts(); ++d) {
        for (int day = 0; day <= scenario.num_days; ++day) {
            auto lo = result.block(0, d, day);
            auto hi = result.block(kNumPercentiles - 1, d, day);
            for (std::size_t i = 0; i < lo.size(); ++i) {
                ASSERT_EQ(lo[i], hi[i]);
            }
        }
    }
}

TEST(Ensemble, RepeatRunsAreBitIdentical)
{
    auto g = toy_graph();
    auto s = short_scenario(8);
    EXPECT_EQ(run_ensemble(s, g, fixed_options()), run_ensemble(s, g, fixed_options()));
}

TEST(Ensemble, OutputDoesNotDependOnThreadCount)
{
    auto g = toy_graph();
    auto s = short_scenario(9);
    auto one = run_ensemble(s, g, fixed_options(1));
    EXPECT_EQ(one, run_ensemble(s, g, fixed_options(3)));
    EXPECT_EQ(one, run_ensemble(s, g, fixed_options(16)));
}

TEST(Ensemble, SeedChangesTheBands)
{
    auto g = toy_graph();
    auto a = short_scenario(8);
    auto b = a;
    b.seed = a.seed + 1;
    auto ra = run_ensemble(a, g, fixed_options());
    auto rb = run_ensemble(b, g, fixed_options());
    EXPECT_FALSE(std::equal(ra.values().begin(), ra.values().end(), rb.values().begin()));
}

TEST(Ensemble, PercentilesAreMonotoneAndDayZeroIsShared)
{
    auto g      = toy_graph();
    auto result = run_ensemble(short_scenario(32, 60), g, fixed_options());
    for (std::size_t d = 0; d < result.num_districts(); ++d) {
        for (int day = 0; day <= result.num_days(); ++day) {
            for (std::size_t p = 1; p < kNumPercentiles; ++p) {
                auto lo = result.block(p - 1, d, day);
                auto hi = result.block(p, d, day);
                for (std::size_t i = 0; i < lo.size(); ++i) {
                    ASSERT_LE(lo[i], hi[i]);
                    ASSERT_GE(lo[i], 0.0);
                    if (day == 0) {
                        ASSERT_EQ(lo[i], hi[i]);
                    }
                }
            }
        }
    }
}

TEST(Ensemble, DeadIsMonotoneInEveryPercentileSlice)
{
    auto g      = toy_graph();
    auto result = run_ensemble(short_scenario(16, 60), g, fixed_options());
    for (std::size_t p = 0; p < kNumPercentiles; ++p) {
        for (std::size_t d = 0; d < result.num_districts(); ++d) {
            for (std::size_t grp = 0; grp < result.num_groups(); ++grp) {
                for (int day = 1; day <= result.num_days(); ++day) {
                    ASSERT_GE(result.at(p, d, day, grp, Compartment::Dead),
                              result.at(p, d, day - 1, grp, Compartment::Dead));
                }
            }
        }
    }
}

TEST(Ensemble, AggregatesArePercentilesOfMemberSums)
{
    auto g       = toy_graph();
    auto members = run_members(short_scenario(12), g, fixed_options());
    auto result  = summarize(members);
    const std::size_t districts = result.num_districts(), groups = result.num_groups();
    const std::size_t total = result.total_group_index(), nation = result.national_index();

    for (const auto& m : members.members) {
        for (std::size_t d = 0; d < districts; ++d) {
            for (int day = 0; day <= result.num_days(); ++day) {
                for (auto c : kAllCompartments) {
                    double sum = 0;
                    for (std::size_t grp = 0; grp < groups - 1; ++grp) {
                        sum += m[result.index(0, d, day, grp, c)];
                    }
                    ASSERT_NEAR(m[result.index(0, d, day, total, c)], sum, 1e-9 * std::max(1.0, sum));
                }
            }
        }
        for (std::size_t grp = 0; grp < groups; ++grp) {
            for (auto c : kAllCompartments) {
                double sum = 0;
                for (std::size_t d = 0; d + 1 < districts; ++d) {
                    sum += m[result.index(0, d, 50 % (result.num_days() + 1), grp, c)];
                }
                ASSERT_NEAR(m[result.index(0, nation, 50 % (result.num_days() + 1), grp, c)], sum,
                            1e-9 * std::max(1.0, sum));
            }
        }
    }

    // every aggregate cell is the percentile of the per-member aggregate
    for (int day : {0, 10, 30}) {
        std::vector<double> samples;
        for (const auto& m : members.members) {
            samples.push_back(m[result.index(0, nation, day, total, Compartment::Infected)]);
        }
        for (std::size_t p = 0; p < kNumPercentiles; ++p) {
            EXPECT_EQ(result.at(p, nation, day, total, Compartment::Infected), percentile(samples, kPercentiles[p]));
        }
    }
}

TEST(Ensemble, MemberFailureNamesTheMember)
{
    auto g = toy_graph();
    g.edges.clear();
    g.nodes[3].initial              = CompartmentTensor(2);
    g.nodes[3].district.population  = {0, 0};
    try {
        run_ensemble(short_scenario(4), g, fixed_options());
        FAIL();
    }
    catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("ensemble member 0"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("05382"), std::string::npos) << e.what();
    }
}

TEST(Ensemble, LocalDampingsOnlyAffectTheirDistrict)
{
    auto g    = toy_graph();
    g.edges.clear();
    auto base = short_scenario(1);
    auto local = base;
    local.local_dampings["05314"] = {testing::all_locations("bonn", 0.8, 0, 30)};
    auto rb = run_ensemble(base, g, fixed_options());
    auto rl = run_ensemble(local, g, fixed_options());
    auto bonn = *rb.find_district("05314"), koeln = *rb.find_district("05315");
    EXPECT_LT(rl.at(2, bonn, 20, 2, Compartment::Infected), rb.at(2, bonn, 20, 2, Compartment::Infected));
    EXPECT_EQ(rl.at(2, koeln, 20, 2, Compartment::Infected), rb.at(2, koeln, 20, 2, Compartment::Infected));
}

SimulationResult trend_fixture(double day0, double later)
{
    ResultMetadata meta;
    meta.num_days  = 2;
    meta.districts = {{"05315", "Köln"}, {"00000", "Germany"}};
    meta.groups    = {"all", "total"};
    SimulationResult r(meta);
    r.at(kMedianIndex, 0, 0, 0, Compartment::Infected) = day0;
    r.at(kMedianIndex, 0, 2, 0, Compartment::Infected) = later;
    return r;
}

TEST(TrendIndicator, Rules)
{
    auto up = trend_indicator(trend_fixture(100, 110), 0, 0, Compartment::Infected, 2);
    ASSERT_TRUE(up.relative_change);
    EXPECT_NEAR(*up.relative_change, 0.10, 1e-15);
    EXPECT_EQ(up.trend, Trend::Increasing);

    auto same = trend_indicator(trend_fixture(100, 100), 0, 0, Compartment::Infected, 2);
    EXPECT_EQ(*same.relative_change, 0.0);
    EXPECT_EQ(same.trend, Trend::Stable);

    EXPECT_EQ(trend_indicator(trend_fixture(100, 99.5), 0, 0, Compartment::Infected, 2).trend, Trend::Stable);
    EXPECT_EQ(trend_indicator(trend_fixture(100, 98), 0, 0, Compartment::Infected, 2).trend, Trend::Decreasing);

    auto zero = trend_indicator(trend_fixture(0, 0), 0, 0, Compartment::Infected, 2);
    EXPECT_FALSE(zero.relative_change);
    EXPECT_EQ(zero.trend, Trend::Stable);
    EXPECT_EQ(trend_indicator(trend_fixture(0, 3), 0, 0, Compartment::Infected, 2).trend, Trend::Increasing);
    EXPECT_EQ(trend_name(Trend::Decreasing), "decreasing");
}

TEST(TrendIndicator, DayZeroIsAlwaysStable)
{
    auto r = run_ensemble(short_scenario(4, 10), toy_graph(), fixed_options());
    for (auto c : kAllCompartments) {
        EXPECT_EQ(trend_indicator(r, 0, 2, c, 0).trend, Trend::Stable);
    }
}

} // namespace
} // namespace esid
