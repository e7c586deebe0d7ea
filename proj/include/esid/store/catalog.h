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
#ifndef ESID_STORE_CATALOG_H
#define ESID_STORE_CATALOG_H

#include "esid/ensemble/scenario.h"
#include "esid/ensemble/simulation_result.h"
#include "esid/graph/graph.h"
#include "esid/store/case_data.h"
#include "esid/store/registry.h"

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace esid
{

enum class RunStatus
{
    Queued,
    Running,
    Done,
    Failed,
};

std::string_view run_status_name(RunStatus status);

struct RunEntry {
    std::string id;
    std::string scenario_id;
    RunStatus status = RunStatus::Queued;
    std::string error;

    bool operator==(const RunEntry&) const = default;
};

/**
 * A store directory holding the district graph, scenario definitions, runs and ingested case data:
 *
 *     <root>/catalog.json        scenarios and run index
 *     <root>/graph.json          district graph, also the district registry
 *     <root>/cases.csv           ingested case data, normalized
 *     <root>/runs/<run id>/      result directories
 *
 * Writers are serialized; readers run concurrently and only see completed results.
 */
class StoreCatalog
{
public:
    /// Opens the store at `root`, creating an empty one if the directory does not exist.
    explicit StoreCatalog(std::filesystem::path root);

    StoreCatalog(const StoreCatalog&)            = delete;
    StoreCatalog& operator=(const StoreCatalog&) = delete;

    const std::filesystem::path& root() const
    {
        return m_root;
    }

    bool has_graph() const;
    /// Throws NotFoundError when no graph has been set.
    GraphModel graph() const;
    DistrictRegistry registry() const;

    /// Sets the store graph. Once scenarios exist, only an identical graph is accepted.
    void set_graph(const GraphModel& graph);

    /// All scenarios ordered by id.
    std::vector<ScenarioDefinition> scenarios() const;
    std::optional<ScenarioDefinition> scenario(std::string_view id) const;
    /// Inserts or replaces a scenario; requires a graph.
    void put_scenario(const ScenarioDefinition& scenario);

    std::vector<RunEntry> runs() const;
    std::optional<RunEntry> run(std::string_view id) const;
    /// Most recent completed run of a scenario.
    std::optional<RunEntry> latest_completed_run(std::string_view scenario_id) const;

    /// Registers a new queued run and returns its id ("<scenario>-<n>").
    std::string create_run(std::string_view scenario_id);
    void set_run_status(std::string_view run_id, RunStatus status, std::string error = {});
    /// Persists the result of a run and marks it done. The result's run id is set to `run_id`.
    void store_result(std::string_view run_id, SimulationResult result);
    /// create_run + store_result.
    std::string add_completed_run(std::string_view scenario_id, SimulationResult result);

    /// Completed result of a run; nullptr if the run is unknown or not done.
    std::shared_ptr<const SimulationResult> result(std::string_view run_id) const;

    IngestReport ingest_cases(std::istream& csv);
    CaseSeries case_series(std::string_view district, std::string_view group) const;
    std::vector<CaseRecord> case_records() const;

    /// FNV-1a hash of the catalog state (scenarios, runs, graph, case data).
    std::uint64_t checksum() const;

private:
    void load();
    void persist() const; // callers hold the unique lock
    void persist_cases() const;
    nlohmann::json catalog_json() const;

    std::filesystem::path m_root;
    mutable std::shared_mutex m_mutex;
    std::optional<GraphModel> m_graph;
    std::map<std::string, ScenarioDefinition, std::less<>> m_scenarios;
    std::vector<RunEntry> m_runs; // creation order
    std::map<std::string, std::shared_ptr<const SimulationResult>, std::less<>> m_results;
    CaseDatabase m_cases;
};

} // namespace esid

#endif // ESID_STORE_CATALOG_H
