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
#include "esid/store/catalog.h"
#include "esid/graph/graph_io.h"
#include "esid/store/result_io.h"
#include "esid/utils/error.h"
#include "esid/utils/json_util.h"

#include <fstream>
#include <mutex>
#include <sstream>

namespace esid
{

using nlohmann::json;
namespace fs = std::filesystem;

namespace
{

constexpr std::string_view kCatalogFile = "catalog.json";
constexpr std::string_view kGraphFile   = "graph.json";
constexpr std::string_view kCasesFile   = "cases.csv";
constexpr std::string_view kRunsDir     = "runs";

std::optional<RunStatus> parse_run_status(std::string_view s)
{
    for (auto st : {RunStatus::Queued, RunStatus::Running, RunStatus::Done, RunStatus::Failed}) {
        if (run_status_name(st) == s) {
            return st;
        }
    }
    return std::nullopt;
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t hash = 0xcbf29ce484222325ull)
{
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

} // namespace

std::string_view run_status_name(RunStatus status)
{
    switch (status) {
    case RunStatus::Queued:
        return "queued";
    case RunStatus::Running:
        return "running";
    case RunStatus::Done:
        return "done";
    case RunStatus::Failed:
        return "failed";
    }
    return "";
}

StoreCatalog::StoreCatalog(fs::path root)
    : m_root(std::move(root))
{
    std::error_code ec;
    fs::create_directories(m_root / kRunsDir, ec);
    if (ec) {
        throw IoError("cannot create store at " + m_root.string() + ": " + ec.message());
    }
    load();
}

void StoreCatalog::load()
{
    if (fs::exists(m_root / kGraphFile)) {
        m_graph = read_graph(m_root / kGraphFile);
        m_cases = CaseDatabase(m_graph->age_groups);
    }
    if (fs::exists(m_root / kCatalogFile)) {
        auto doc = read_json_file(m_root / kCatalogFile);
        const auto& scenarios = require(doc, "scenarios", "catalog");
        if (!scenarios.empty() && !m_graph) {
            throw FormatError("store: catalog lists scenarios but graph.json is missing");
        }
        for (const auto& s : scenarios) {
            auto def = scenario_from_json(s, m_graph->age_groups);
            m_scenarios.emplace(def.id, std::move(def));
        }
        for (const auto& r : require(doc, "runs", "catalog")) {
            RunEntry entry;
            entry.id          = get_string(r, "id", "catalog.runs");
            entry.scenario_id = get_string(r, "scenario", "catalog.runs");
            auto status       = parse_run_status(get_string(r, "status", "catalog.runs"));
            if (!status) {
                throw FormatError("store: run " + entry.id + " has an unknown status");
            }
            entry.status = *status;
            entry.error  = r.value("error", "");
            if (entry.status == RunStatus::Queued || entry.status == RunStatus::Running) {
                entry.status = RunStatus::Failed;
                entry.error  = "interrupted";
            }
            if (entry.status == RunStatus::Done) {
                m_results[entry.id] = std::make_shared<const SimulationResult>(load_result(m_root / kRunsDir / entry.id));
            }
            m_runs.push_back(std::move(entry));
        }
    }
    if (m_graph && fs::exists(m_root / kCasesFile)) {
        std::ifstream in(m_root / kCasesFile, std::ios::binary);
        auto ingested = ingest_case_data(in, DistrictRegistry(m_graph->districts()), m_graph->age_groups);
        m_cases.merge(ingested.records);
    }
}

json StoreCatalog::catalog_json() const
{
    json scenarios = json::array();
    for (const auto& [id, s] : m_scenarios) {
        scenarios.push_back(to_json(s, m_graph->age_groups));
    }
    json runs = json::array();
    for (const auto& r : m_runs) {
        runs.push_back(
            {{"id", r.id}, {"scenario", r.scenario_id}, {"status", run_status_name(r.status)}, {"error", r.error}});
    }
    return {{"version", 1}, {"scenarios", std::move(scenarios)}, {"runs", std::move(runs)}};
}

void StoreCatalog::persist() const
{
    auto tmp = m_root / (std::string(kCatalogFile) + ".tmp");
    write_json_file(tmp, catalog_json());
    std::error_code ec;
    fs::rename(tmp, m_root / kCatalogFile, ec);
    if (ec) {
        throw IoError("cannot update catalog: " + ec.message());
    }
}

void StoreCatalog::persist_cases() const
{
    auto tmp = m_root / (std::string(kCasesFile) + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write " + tmp.string());
        }
        write_case_csv(out, m_cases.records());
    }
    std::error_code ec;
    fs::rename(tmp, m_root / kCasesFile, ec);
    if (ec) {
        throw IoError("cannot update case data: " + ec.message());
    }
}

bool StoreCatalog::has_graph() const
{
    std::shared_lock lock(m_mutex);
    return m_graph.has_value();
}

GraphModel StoreCatalog::graph() const
{
    std::shared_lock lock(m_mutex);
    if (!m_graph) {
        throw NotFoundError("store has no graph");
    }
    return *m_graph;
}

DistrictRegistry StoreCatalog::registry() const
{
    std::shared_lock lock(m_mutex);
    return m_graph ? DistrictRegistry(m_graph->districts()) : DistrictRegistry();
}

void StoreCatalog::set_graph(const GraphModel& graph)
{
    graph.validate();
    std::unique_lock lock(m_mutex);
    if (m_graph) {
        if (*m_graph == graph) {
            return;
        }
        if (!m_scenarios.empty()) {
            throw ValidationError("store already holds scenarios for a different graph");
        }
    }
    write_json_file(m_root / kGraphFile, to_json(graph));
    m_graph = graph;
    m_cases = CaseDatabase(graph.age_groups);
}

std::vector<ScenarioDefinition> StoreCatalog::scenarios() const
{
    std::shared_lock lock(m_mutex);
    std::vector<ScenarioDefinition> out;
    for (const auto& [id, s] : m_scenarios) {
        out.push_back(s);
    }
    return out;
}

std::optional<ScenarioDefinition> StoreCatalog::scenario(std::string_view id) const
{
    std::shared_lock lock(m_mutex);
    auto it = m_scenarios.find(id);
    if (it == m_scenarios.end()) {
        return std::nullopt;
    }
    return it->second;
}

void StoreCatalog::put_scenario(const ScenarioDefinition& scenario)
{
    std::unique_lock lock(m_mutex);
    if (!m_graph) {
        throw ValidationError("store has no graph; set one before adding scenarios");
    }
    validate_scenario(scenario, *m_graph);
    m_scenarios.insert_or_assign(scenario.id, scenario);
    persist();
}

std::vector<RunEntry> StoreCatalog::runs() const
{
    std::shared_lock lock(m_mutex);
    return m_runs;
}

std::optional<RunEntry> StoreCatalog::run(std::string_view id) const
{
    std::shared_lock lock(m_mutex);
    for (const auto& r : m_runs) {
        if (r.id == id) {
            return r;
        }
    }
    return std::nullopt;
}

std::optional<RunEntry> StoreCatalog::latest_completed_run(std::string_view scenario_id) const
{
    std::shared_lock lock(m_mutex);
    for (auto it = m_runs.rbegin(); it != m_runs.rend(); ++it) {
        if (it->scenario_id == scenario_id && it->status == RunStatus::Done) {
            return *it;
        }
    }
    return std::nullopt;
}

std::string StoreCatalog::create_run(std::string_view scenario_id)
{
    std::unique_lock lock(m_mutex);
    if (!m_scenarios.count(std::string(scenario_id))) {
        throw NotFoundError("unknown scenario '" + std::string(scenario_id) + "'");
    }
    auto exists = [&](const std::string& id) {
        for (const auto& r : m_runs) {
            if (r.id == id) {
                return true;
            }
        }
        return false;
    };
    std::size_t n = 1;
    for (const auto& r : m_runs) {
        n += r.scenario_id == scenario_id;
    }
    std::string id = std::string(scenario_id) + "-" + std::to_string(n);
    while (exists(id)) {
        id = std::string(scenario_id) + "-" + std::to_string(++n);
    }
    m_runs.push_back({id, std::string(scenario_id), RunStatus::Queued, {}});
    persist();
    return id;
}

void StoreCatalog::set_run_status(std::string_view run_id, RunStatus status, std::string error)
{
    std::unique_lock lock(m_mutex);
    for (auto& r : m_runs) {
        if (r.id == run_id) {
            r.status = status;
            r.error  = std::move(error);
            persist();
            return;
        }
    }
    throw NotFoundError("unknown run '" + std::string(run_id) + "'");
}

void StoreCatalog::store_result(std::string_view run_id, SimulationResult result)
{
    auto entry = run(run_id);
    if (!entry) {
        throw NotFoundError("unknown run '" + std::string(run_id) + "'");
    }
    result.metadata().run_id = std::string(run_id);
    // the run directory is not visible to readers until the run is marked done
    save_result(result, m_root / kRunsDir / std::string(run_id));
    auto shared = std::make_shared<const SimulationResult>(std::move(result));

    std::unique_lock lock(m_mutex);
    m_results[std::string(run_id)] = std::move(shared);
    for (auto& r : m_runs) {
        if (r.id == run_id) {
            r.status = RunStatus::Done;
            r.error.clear();
        }
    }
    persist();
}

std::string StoreCatalog::add_completed_run(std::string_view scenario_id, SimulationResult result)
{
    auto id = create_run(scenario_id);
    store_result(id, std::move(result));
    return id;
}

std::shared_ptr<const SimulationResult> StoreCatalog::result(std::string_view run_id) const
{
    std::shared_lock lock(m_mutex);
    auto it = m_results.find(run_id);
    return it == m_results.end() ? nullptr : it->second;
}

IngestReport StoreCatalog::ingest_cases(std::istream& csv)
{
    std::unique_lock lock(m_mutex);
    if (!m_graph) {
        throw ValidationError("store has no graph; the district registry is required for ingest");
    }
    auto ingested = ingest_case_data(csv, DistrictRegistry(m_graph->districts()), m_graph->age_groups);
    m_cases.merge(ingested.records);
    persist_cases();
    return ingested.report;
}

CaseSeries StoreCatalog::case_series(std::string_view district, std::string_view group) const
{
    std::shared_lock lock(m_mutex);
    return m_cases.series(district, group);
}

std::vector<CaseRecord> StoreCatalog::case_records() const
{
    std::shared_lock lock(m_mutex);
    return m_cases.records();
}

std::uint64_t StoreCatalog::checksum() const
{
    std::shared_lock lock(m_mutex);
    std::uint64_t h = fnv1a(m_graph ? to_json(*m_graph).dump() : "");
    if (m_graph) {
        h = fnv1a(catalog_json().dump(), h);
    }
    std::ostringstream cases;
    write_case_csv(cases, m_cases.records());
    h = fnv1a(cases.str(), h);
    for (const auto& [id, result] : m_results) {
        auto values = result->values();
        h = fnv1a(id, h);
        h = fnv1a(std::string_view(reinterpret_cast<const char*>(values.data()), values.size_bytes()), h);
    }
    return h;
}

} // namespace esid
