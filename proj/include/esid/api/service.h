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
#ifndef ESID_API_SERVICE_H
#define ESID_API_SERVICE_H

#include "esid/ensemble/ensemble.h"
#include "esid/ensemble/simulation_result.h"
#include "esid/store/catalog.h"

#include "json.hpp"

#include <array>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <stop_token>
#include <string>
#include <thread>
#include <vector>

namespace esid::api
{

/// Map: one scenario, one compartment, one day, all districts.
struct MapSlice {
    std::string scenario_id;
    std::string run_id;
    Compartment compartment{};
    int day = 0;
    Date date{};
    std::string group;
    int percentile = 50;
    std::vector<DistrictLabel> districts;
    std::vector<double> values;
};

struct SeriesBundle {
    std::string scenario_id;
    std::string run_id;
    std::string color;
    Date start_date{};
    int num_days = 0;
    std::array<std::vector<double>, kNumPercentiles> percentiles; ///< each num_days + 1 long
};

/// Chart: all scenarios, one compartment, all days, one district.
struct ChartSeries {
    Compartment compartment{};
    std::string district;
    std::string group;
    std::vector<SeriesBundle> scenarios;
};

struct CardEntry {
    Compartment compartment{};
    double value = 0; ///< median
    TrendIndicator trend;
};

/// Card: one scenario, all compartments, one day, one district.
struct CardValues {
    std::string scenario_id;
    std::string run_id;
    int day = 0;
    Date date{};
    std::string district;
    std::string group;
    std::vector<CardEntry> entries;
};

struct DampingOverride {
    std::string id;
    std::optional<int> start_day;
    std::optional<int> end_day;
    std::optional<double> strength;
};

/// Expert-view request for a new run derived from an existing scenario.
struct RunRequest {
    std::string base_scenario;
    std::vector<DampingOverride> dampings;
    nlohmann::json parameters; ///< null or range overrides in the scenario file syntax
    std::optional<std::size_t> members;
    std::optional<std::uint64_t> seed;
};

/// Largest ensemble accepted through the api.
inline constexpr std::size_t kMaxRequestMembers = 1024;

RunRequest run_request_from_json(std::string base_scenario, const nlohmann::json& body);

struct RunTicket {
    std::string run_id;
    std::string scenario_id;
    RunStatus status = RunStatus::Queued;
};

nlohmann::json to_json(const MapSlice& slice);
nlohmann::json to_json(const ChartSeries& chart);
nlohmann::json to_json(const CardValues& card);
nlohmann::json to_json(const RunTicket& ticket);

struct ServiceOptions {
    std::size_t ensemble_threads = 0;
};

/**
 * Query and run-trigger logic behind the HTTP endpoints. Read queries never modify the catalog;
 * triggered runs are executed one at a time in FIFO order by a background worker.
 * Errors are raised as esid::Error (NotFound -> 404, Validation -> 422).
 */
class Service
{
public:
    explicit Service(StoreCatalog& catalog, ServiceOptions options = {});
    ~Service();

    Service(const Service&)            = delete;
    Service& operator=(const Service&) = delete;

    nlohmann::json list_scenarios() const;
    nlohmann::json get_scenario(std::string_view id) const;

    MapSlice map_slice(std::string_view scenario_id, std::string_view compartment, int day, std::string_view group,
                       std::optional<int> percentile) const;
    ChartSeries chart_series(std::string_view compartment, std::string_view district, std::string_view group) const;
    CardValues card_values(std::string_view scenario_id, int day, std::string_view district,
                           std::string_view group) const;

    /// Validates the request, registers a derived scenario and a queued run, and returns immediately.
    RunTicket trigger_run(const RunRequest& request);
    nlohmann::json run_status(std::string_view run_id) const;

    nlohmann::json case_series(std::string_view district, std::string_view group) const;
    nlohmann::json search(std::string_view query) const;

    /// Blocks until the run queue is empty and the worker is idle.
    void wait_idle();

    const StoreCatalog& catalog() const
    {
        return m_catalog;
    }

private:
    struct Job {
        std::string run_id;
        ScenarioDefinition scenario;
    };

    struct ResolvedRun {
        ScenarioDefinition scenario;
        RunEntry run;
        std::shared_ptr<const SimulationResult> result;
    };

    ResolvedRun resolve(std::string_view scenario_id) const;
    void worker_loop(std::stop_token stop);

    StoreCatalog& m_catalog;
    ServiceOptions m_options;
    std::mutex m_trigger_mutex; // serializes derived scenario creation
    std::mutex m_queue_mutex;
    std::condition_variable_any m_queue_cv;
    std::condition_variable m_idle_cv;
    std::deque<Job> m_queue;
    bool m_busy = false;
    std::jthread m_worker;
};

} // namespace esid::api

#endif // ESID_API_SERVICE_H
