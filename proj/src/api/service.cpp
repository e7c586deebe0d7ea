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
#include "esid/api/service.h"
#include "esid/ensemble/parameter_ranges.h"
#include "esid/utils/error.h"
#include "esid/utils/json_util.h"

#include <algorithm>

namespace esid::api
{

using nlohmann::json;

namespace
{

Compartment require_compartment(std::string_view text)
{
    auto c = parse_compartment(text);
    if (!c) {
        throw NotFoundError("unknown compartment '" + std::string(text) + "'");
    }
    return *c;
}

std::size_t require_group(const SimulationResult& result, std::string_view group)
{
    auto g = result.find_group(group);
    if (!g) {
        throw NotFoundError("unknown age group '" + std::string(group) + "'");
    }
    return *g;
}

std::size_t require_district(const SimulationResult& result, std::string_view district)
{
    auto d = result.find_district(district);
    if (!d) {
        throw NotFoundError("unknown district '" + std::string(district) + "'");
    }
    return *d;
}

void require_day(const SimulationResult& result, int day)
{
    if (day < 0 || day > result.num_days()) {
        throw ValidationError("day " + std::to_string(day) + " outside the scenario horizon [0, " +
                              std::to_string(result.num_days()) + "]");
    }
}

json compartment_codes()
{
    json out = json::array();
    for (auto c : kAllCompartments) {
        out.push_back(compartment_code(c));
    }
    return out;
}

} // namespace

RunRequest run_request_from_json(std::string base_scenario, const json& body)
{
    RunRequest req;
    req.base_scenario = std::move(base_scenario);
    if (body.is_null()) {
        return req;
    }
    if (!body.is_object()) {
        throw ValidationError("request: expected a JSON object");
    }
    for (const auto& [key, value] : body.items()) {
        if (key != "dampings" && key != "parameters" && key != "members" && key != "seed") {
            throw ValidationError("request." + key + ": unknown field");
        }
    }
    if (body.contains("dampings")) {
        const auto& list = body["dampings"];
        if (!list.is_array()) {
            throw ValidationError("request.dampings: expected an array");
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
            auto path = "request.dampings[" + std::to_string(i) + "]";
            DampingOverride o;
            o.id = get_string(list[i], "id", path);
            if (list[i].contains("start_day")) {
                o.start_day = get_int(list[i], "start_day", path);
            }
            if (list[i].contains("end_day")) {
                o.end_day = get_int(list[i], "end_day", path);
            }
            if (list[i].contains("strength")) {
                o.strength = get_number(list[i], "strength", path);
            }
            req.dampings.push_back(std::move(o));
        }
    }
    if (body.contains("parameters")) {
        req.parameters = body["parameters"];
    }
    if (body.contains("members")) {
        req.members = static_cast<std::size_t>(get_uint64(body, "members", "request"));
    }
    if (body.contains("seed")) {
        req.seed = get_uint64(body, "seed", "request");
    }
    return req;
}

json to_json(const MapSlice& slice)
{
    json ids   = json::array();
    json names = json::array();
    for (const auto& d : slice.districts) {
        ids.push_back(d.id);
        names.push_back(d.name);
    }
    return {{"scenario", slice.scenario_id},
            {"run", slice.run_id},
            {"compartment", compartment_code(slice.compartment)},
            {"day", slice.day},
            {"date", format_date(slice.date)},
            {"group", slice.group},
            {"percentile", slice.percentile},
            {"dimensions", {"district"}},
            {"districts", std::move(ids)},
            {"names", std::move(names)},
            {"values", slice.values}};
}

json to_json(const ChartSeries& chart)
{
    json series = json::array();
    for (const auto& b : chart.scenarios) {
        json days  = json::array();
        json dates = json::array();
        for (int d = 0; d <= b.num_days; ++d) {
            days.push_back(d);
            dates.push_back(format_date(add_days(b.start_date, d)));
        }
        json values = json::array();
        for (const auto& p : b.percentiles) {
            values.push_back(p);
        }
        series.push_back({{"scenario", b.scenario_id},
                          {"run", b.run_id},
                          {"color", b.color},
                          {"days", std::move(days)},
                          {"dates", std::move(dates)},
                          {"values", std::move(values)}});
    }
    return {{"compartment", compartment_code(chart.compartment)},
            {"district", chart.district},
            {"group", chart.group},
            {"percentiles", kPercentiles},
            {"dimensions", {"scenario", "percentile", "day"}},
            {"series", std::move(series)}};
}

json to_json(const CardValues& card)
{
    json values  = json::array();
    json trends  = json::array();
    json changes = json::array();
    json names   = json::array();
    for (const auto& e : card.entries) {
        values.push_back(e.value);
        trends.push_back(trend_name(e.trend.trend));
        changes.push_back(e.trend.relative_change ? json(*e.trend.relative_change) : json(nullptr));
        names.push_back(compartment_name(e.compartment));
    }
    return {{"scenario", card.scenario_id},
            {"run", card.run_id},
            {"day", card.day},
            {"date", format_date(card.date)},
            {"district", card.district},
            {"group", card.group},
            {"dimensions", {"compartment"}},
            {"compartments", compartment_codes()},
            {"names", std::move(names)},
            {"values", std::move(values)},
            {"trends", std::move(trends)},
            {"changes", std::move(changes)}};
}

json to_json(const RunTicket& ticket)
{
    return {{"run_id", ticket.run_id},
            {"scenario", ticket.scenario_id},
            {"status", run_status_name(ticket.status)},
            {"status_url", "/runs/" + ticket.run_id + "/status"}};
}

Service::Service(StoreCatalog& catalog, ServiceOptions options)
    : m_catalog(catalog)
    , m_options(options)
    , m_worker([this](std::stop_token stop) {
        worker_loop(stop);
    })
{
}

Service::~Service()
{
    m_worker.request_stop();
    m_queue_cv.notify_all();
}

json Service::list_scenarios() const
{
    json out = json::array();
    for (const auto& s : m_catalog.scenarios()) {
        auto done = m_catalog.latest_completed_run(s.id);
        json summary = {{"id", s.id},
                        {"name", s.name},
                        {"description", s.description},
                        {"color", s.color},
                        {"start_date", format_date(s.start_date)},
                        {"num_days", s.num_days},
                        {"members", s.members},
                        {"status", done ? "done" : "pending"},
                        {"run", done ? json(done->id) : json(nullptr)}};
        std::optional<RunEntry> latest;
        for (const auto& r : m_catalog.runs()) {
            if (r.scenario_id == s.id) {
                latest = r;
            }
        }
        if (latest && latest->status != RunStatus::Done) {
            summary["active_run"] = {{"id", latest->id}, {"status", run_status_name(latest->status)}};
        }
        out.push_back(std::move(summary));
    }
    return out;
}

json Service::get_scenario(std::string_view id) const
{
    auto s = m_catalog.scenario(id);
    if (!s) {
        throw NotFoundError("unknown scenario '" + std::string(id) + "'");
    }
    auto graph = m_catalog.graph();
    json out   = to_json(*s, graph.age_groups);
    auto done  = m_catalog.latest_completed_run(s->id);
    out["status"] = done ? "done" : "pending";
    out["run"]    = done ? json(done->id) : json(nullptr);
    json runs     = json::array();
    for (const auto& r : m_catalog.runs()) {
        if (r.scenario_id == s->id) {
            runs.push_back({{"id", r.id}, {"status", run_status_name(r.status)}});
        }
    }
    out["runs"]       = std::move(runs);
    out["age_groups"] = graph.age_groups.labels();
    return out;
}

Service::ResolvedRun Service::resolve(std::string_view scenario_id) const
{
    auto s = m_catalog.scenario(scenario_id);
    if (!s) {
        throw NotFoundError("unknown scenario '" + std::string(scenario_id) + "'");
    }
    auto run = m_catalog.latest_completed_run(scenario_id);
    std::shared_ptr<const SimulationResult> result = run ? m_catalog.result(run->id) : nullptr;
    if (!result) {
        throw NotFoundError("scenario '" + std::string(scenario_id) + "' has no completed run");
    }
    return {std::move(*s), std::move(*run), std::move(result)};
}

MapSlice Service::map_slice(std::string_view scenario_id, std::string_view compartment, int day,
                            std::string_view group, std::optional<int> percentile) const
{
    auto resolved   = resolve(scenario_id);
    const auto& res = *resolved.result;
    auto c          = require_compartment(compartment);
    auto g          = require_group(res, group);
    require_day(res, day);
    int q = percentile.value_or(kPercentiles[kMedianIndex]);
    auto p = percentile_index(q);
    if (!p) {
        throw ValidationError("percentile must be one of 5, 25, 50, 75, 95");
    }

    MapSlice slice;
    slice.scenario_id = resolved.scenario.id;
    slice.run_id      = resolved.run.id;
    slice.compartment = c;
    slice.day         = day;
    slice.date        = add_days(res.metadata().start_date, day);
    slice.group       = std::string(group);
    slice.percentile  = q;
    for (std::size_t d = 0; d < res.national_index(); ++d) {
        slice.districts.push_back(res.metadata().districts[d]);
        slice.values.push_back(res.at(*p, d, day, g, c));
    }
    return slice;
}

ChartSeries Service::chart_series(std::string_view compartment, std::string_view district,
                                  std::string_view group) const
{
    ChartSeries chart;
    chart.compartment = require_compartment(compartment);
    chart.district    = std::string(district);
    chart.group       = std::string(group);
    if (district != kNationalDistrict && !m_catalog.registry().contains(district)) {
        throw NotFoundError("unknown district '" + std::string(district) + "'");
    }
    for (const auto& s : m_catalog.scenarios()) {
        auto run = m_catalog.latest_completed_run(s.id);
        auto res = run ? m_catalog.result(run->id) : nullptr;
        if (!res) {
            continue;
        }
        auto d = res->find_district(district);
        if (!d) {
            continue;
        }
        auto g = require_group(*res, group);
        SeriesBundle bundle;
        bundle.scenario_id = s.id;
        bundle.run_id      = run->id;
        bundle.color       = s.color;
        bundle.start_date  = res->metadata().start_date;
        bundle.num_days    = res->num_days();
        for (std::size_t p = 0; p < kNumPercentiles; ++p) {
            auto& series = bundle.percentiles[p];
            series.reserve(static_cast<std::size_t>(res->num_days()) + 1);
            for (int day = 0; day <= res->num_days(); ++day) {
                series.push_back(res->at(p, *d, day, g, chart.compartment));
            }
        }
        chart.scenarios.push_back(std::move(bundle));
    }
    return chart;
}

CardValues Service::card_values(std::string_view scenario_id, int day, std::string_view district,
                                std::string_view group) const
{
    auto resolved   = resolve(scenario_id);
    const auto& res = *resolved.result;
    auto d          = require_district(res, district);
    auto g          = require_group(res, group);
    require_day(res, day);

    CardValues card;
    card.scenario_id = resolved.scenario.id;
    card.run_id      = resolved.run.id;
    card.day         = day;
    card.date        = add_days(res.metadata().start_date, day);
    card.district    = std::string(district);
    card.group       = std::string(group);
    for (auto c : kAllCompartments) {
        card.entries.push_back({c, res.at(kMedianIndex, d, day, g, c), trend_indicator(res, d, g, c, day)});
    }
    return card;
}

RunTicket Service::trigger_run(const RunRequest& request)
{
    std::lock_guard trigger_lock(m_trigger_mutex);
    auto base = m_catalog.scenario(request.base_scenario);
    if (!base) {
        throw NotFoundError("unknown scenario '" + request.base_scenario + "'");
    }
    auto graph = m_catalog.graph();

    ScenarioDefinition derived = *base;
    for (const auto& o : request.dampings) {
        auto it = std::find_if(derived.dampings.begin(), derived.dampings.end(), [&](const Damping& d) {
            return d.id == o.id;
        });
        if (it == derived.dampings.end()) {
            throw ValidationError("dampings: unknown damping id '" + o.id + "'");
        }
        if (o.start_day) {
            it->start_day = *o.start_day;
        }
        if (o.end_day) {
            it->end_day = *o.end_day;
        }
        if (o.strength) {
            it->strength = *o.strength;
        }
        validate_damping(*it, graph.age_groups.size());
    }
    if (!request.parameters.is_null()) {
        derived.parameters = ranges_from_json(request.parameters, graph.age_groups, derived.parameters);
    }
    if (request.members) {
        if (*request.members < 1 || *request.members > kMaxRequestMembers) {
            throw ValidationError("members: must be in [1, " + std::to_string(kMaxRequestMembers) + "]");
        }
        derived.members = *request.members;
    }
    if (request.seed) {
        derived.seed = *request.seed;
    }

    std::string id;
    for (std::size_t n = 1;; ++n) {
        id = base->id + "-custom-" + std::to_string(n);
        if (id.size() > 64) {
            throw ValidationError("scenario id too long to derive a new scenario");
        }
        if (!m_catalog.scenario(id)) {
            break;
        }
    }
    derived.id          = id;
    derived.name        = base->name + " (custom)";
    derived.description = "Derived from '" + base->id + "' with customised parameters";
    validate_scenario(derived, graph);

    m_catalog.put_scenario(derived);
    auto run_id = m_catalog.create_run(derived.id);
    {
        std::lock_guard lock(m_queue_mutex);
        m_queue.push_back({run_id, derived});
    }
    m_queue_cv.notify_one();
    return {run_id, derived.id, RunStatus::Queued};
}

json Service::run_status(std::string_view run_id) const
{
    auto run = m_catalog.run(run_id);
    if (!run) {
        throw NotFoundError("unknown run '" + std::string(run_id) + "'");
    }
    json out = {{"run_id", run->id}, {"scenario", run->scenario_id}, {"status", run_status_name(run->status)}};
    if (!run->error.empty()) {
        out["error"] = run->error;
    }
    return out;
}

json Service::case_series(std::string_view district, std::string_view group) const
{
    if (!m_catalog.registry().contains(district)) {
        throw NotFoundError("unknown district '" + std::string(district) + "'");
    }
    auto s      = m_catalog.case_series(district, group);
    json dates  = json::array();
    for (const auto& d : s.dates) {
        dates.push_back(format_date(d));
    }
    return {{"district", district},     {"group", group},         {"dimensions", {"date"}},
            {"dates", std::move(dates)}, {"confirmed", s.confirmed}, {"deaths", s.deaths},
            {"recovered", s.recovered},  {"active", s.active}};
}

json Service::search(std::string_view query) const
{
    json results = json::array();
    for (const auto& m : m_catalog.registry().search(query)) {
        results.push_back({{"id", m.id}, {"name", m.name}});
    }
    return {{"query", query}, {"results", std::move(results)}};
}

void Service::wait_idle()
{
    std::unique_lock lock(m_queue_mutex);
    m_idle_cv.wait(lock, [&] {
        return m_queue.empty() && !m_busy;
    });
}

void Service::worker_loop(std::stop_token stop)
{
    while (true) {
        Job job;
        {
            std::unique_lock lock(m_queue_mutex);
            if (!m_queue_cv.wait(lock, stop, [&] {
                    return !m_queue.empty();
                })) {
                return;
            }
            job = std::move(m_queue.front());
            m_queue.pop_front();
            m_busy = true;
        }
        try {
            m_catalog.set_run_status(job.run_id, RunStatus::Running);
            EnsembleOptions options;
            options.threads = m_options.ensemble_threads;
            options.run_id  = job.run_id;
            auto result     = run_ensemble(job.scenario, m_catalog.graph(), options);
            m_catalog.store_result(job.run_id, std::move(result));
        }
        catch (const std::exception& e) {
            try {
                m_catalog.set_run_status(job.run_id, RunStatus::Failed, e.what());
            }
            catch (...) {
            }
        }
        {
            std::lock_guard lock(m_queue_mutex);
            m_busy = false;
        }
        m_idle_cv.notify_all();
    }
}

} // namespace esid::api
