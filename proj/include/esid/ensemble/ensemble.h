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
#ifndef ESID_ENSEMBLE_ENSEMBLE_H
#define ESID_ENSEMBLE_ENSEMBLE_H

#include "esid/ensemble/scenario.h"
#include "esid/ensemble/simulation_result.h"
#include "esid/graph/graph.h"

#include <cstddef>
#include <string>
#include <vector>

namespace esid
{

struct EnsembleOptions {
    std::size_t threads = 0; ///< 0 uses std::thread::hardware_concurrency()
    std::string run_id; ///< defaults to the scenario id
    std::string created; ///< defaults to the current UTC time
};

/**
 * Trajectories of all members, each laid out like one percentile slice of a SimulationResult,
 * i.e. including the national district and the "total" group. Aggregates are summed per member.
 */
struct EnsembleMembers {
    ResultMetadata metadata;
    std::vector<std::vector<double>> members;
};

/// Flattens one graph trajectory and appends the age and national aggregates.
std::vector<double> flatten_with_aggregates(const GraphTrajectory& trajectory, std::size_t num_groups);

/// Result metadata (labels and dimensions) for a scenario on a graph.
ResultMetadata make_metadata(const ScenarioDefinition& scenario, const GraphModel& graph,
                             const EnsembleOptions& options);

/**
 * Runs all members. Member k samples its parameters from RandomStream(scenario.seed, k); the
 * output does not depend on the number of threads. A failing member aborts the ensemble with
 * an error naming the member index.
 */
EnsembleMembers run_members(const ScenarioDefinition& scenario, const GraphModel& graph,
                            const EnsembleOptions& options = {});

/// Per-cell percentiles across members.
SimulationResult summarize(const EnsembleMembers& members);

SimulationResult run_ensemble(const ScenarioDefinition& scenario, const GraphModel& graph,
                              const EnsembleOptions& options = {});

} // namespace esid

#endif // ESID_ENSEMBLE_ENSEMBLE_H
