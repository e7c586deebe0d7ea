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
#include "esid/ensemble/ensemble.h"
#include "esid/ensemble/random.h"
#include "esid/utils/error.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

namespace esid
{

std::vector<double> flatten_with_aggregates(const GraphTrajectory& trajectory, std::size_t num_groups)
{
    const std::size_t districts = trajectory.states.size();
    const std::size_t days      = trajectory.states.empty() ? 0 : trajectory.states[0].size();
    const std::size_t groups    = num_groups + 1;
    const std::size_t block     = groups * kNumCompartments;
    std::vector<double> out((districts + 1) * days * block, 0.0);

    auto cell = [&](std::size_t d, std::size_t day, std::size_t g, std::size_t c) -> double& {
        return out[((d * days + day) * groups + g) * kNumCompartments + c];
    };
    for (std::size_t d = 0; d < districts; ++d) {
        for (std::size_t day = 0; day < days; ++day) {
            const auto& state = trajectory.states[d][day];
            for (std::size_t g = 0; g < num_groups; ++g) {
                for (std::size_t c = 0; c < kNumCompartments; ++c) {
                    double v = state.values()[g * kNumCompartments + c];
                    cell(d, day, g, c) = v;
                    cell(d, day, num_groups, c) += v;
                }
            }
        }
    }
    // national aggregate, summed in district order
    for (std::size_t d = 0; d < districts; ++d) {
        for (std::size_t day = 0; day < days; ++day) {
            for (std::size_t g = 0; g < groups; ++g) {
                for (std::size_t c = 0; c < kNumCompartments; ++c) {
                    cell(districts, day, g, c) += cell(d, day, g, c);
                }
            }
        }
    }
    return out;
}

ResultMetadata make_metadata(const ScenarioDefinition& scenario, const GraphModel& graph,
                             const EnsembleOptions& options)
{
    ResultMetadata meta;
    meta.scenario_id = scenario.id;
    meta.run_id      = options.run_id.empty() ? scenario.id : options.run_id;
    meta.seed        = scenario.seed;
    meta.members     = scenario.members;
    meta.created     = options.created.empty() ? utc_timestamp() : options.created;
    meta.start_date  = scenario.start_date;
    meta.num_days    = scenario.num_days;
    for (const auto& node : graph.nodes) {
        meta.districts.push_back({node.district.id, node.district.name});
    }
    meta.districts.push_back({std::string(kNationalDistrict), "national"});
    meta.groups = graph.age_groups.labels();
    meta.groups.emplace_back(kTotalGroup);
    return meta;
}

EnsembleMembers run_members(const ScenarioDefinition& scenario, const GraphModel& graph,
                            const EnsembleOptions& options)
{
    validate_scenario(scenario, graph);
    graph.validate();
    const GraphModel model = apply_scenario(graph, scenario);

    EnsembleMembers out;
    out.metadata = make_metadata(scenario, graph, options);
    out.members.resize(scenario.members);

    std::mutex error_mutex;
    std::optional<std::size_t> failed_member;
    std::exception_ptr failure;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t k = next++; k < scenario.members; k = next++) {
            try {
                RandomStream rng(scenario.seed, k);
                auto params    = sample_parameters(scenario.parameters, rng);
                auto traj      = simulate_graph(model, params, scenario.num_days, scenario.dt);
                out.members[k] = flatten_with_aggregates(traj, graph.age_groups.size());
            }
            catch (...) {
                std::lock_guard lock(error_mutex);
                if (!failed_member || k < *failed_member) {
                    failed_member = k;
                    failure       = std::current_exception();
                }
            }
        }
    };

    std::size_t threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads             = std::min(threads, scenario.members);
    if (threads <= 1) {
        worker();
    }
    else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    if (failure) {
        try {
            std::rethrow_exception(failure);
        }
        catch (const Error& e) {
            throw Error(e.code(), "ensemble member " + std::to_string(*failed_member) + ": " + e.what());
        }
        catch (const std::exception& e) {
            throw IntegrationError("ensemble member " + std::to_string(*failed_member) + ": " + e.what());
        }
    }
    return out;
}

SimulationResult summarize(const EnsembleMembers& members)
{
    SimulationResult result(members.metadata);
    const std::size_t slice = result.values().size() / kNumPercentiles;
    for (const auto& m : members.members) {
        if (m.size() != slice) {
            throw ValidationError("ensemble: member size does not match result dimensions");
        }
    }
    if (members.members.empty()) {
        throw ValidationError("ensemble: no members");
    }
    auto values = result.values();
    std::vector<double> sample(members.members.size());
    for (std::size_t i = 0; i < slice; ++i) {
        for (std::size_t k = 0; k < sample.size(); ++k) {
            sample[k] = members.members[k][i];
        }
        std::sort(sample.begin(), sample.end());
        for (std::size_t p = 0; p < kNumPercentiles; ++p) {
            values[p * slice + i] = percentile_sorted(sample, kPercentiles[p]);
        }
    }
    return result;
}

SimulationResult run_ensemble(const ScenarioDefinition& scenario, const GraphModel& graph,
                              const EnsembleOptions& options)
{
    return summarize(run_members(scenario, graph, options));
}

} // namespace esid
