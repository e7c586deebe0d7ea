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
#include "esid/api/http_server.h"
#include "esid/api/service.h"
#include "esid/ensemble/ensemble.h"
#include "esid/graph/graph_io.h"
#include "esid/store/case_data.h"
#include "esid/store/catalog.h"
#include "esid/store/registry.h"
#include "esid/store/result_io.h"
#include "esid/utils/error.h"
#include "esid/utils/json_util.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace
{

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk      = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage   = 2;

constexpr const char* kDefaultBind = "127.0.0.1:8080";

/// Settings resolved as flag > environment > config file > default.
struct Settings {
    std::string config;
    std::string store;
    std::string graph;
    std::string bind;
    std::size_t threads = 0;
    bool json           = false;
    bool quiet          = false;
};

struct RunArgs {
    std::string scenario;
    std::string out;
    std::string cases;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> members;
};

struct ExportArgs {
    std::string run;
    std::string district = std::string(esid::kNationalDistrict);
    std::string compartment;
    std::string group  = std::string(esid::kTotalGroup);
    std::string format = "csv";
    std::string out;
};

std::string resolve(const CLI::App& app, const char* flag, const std::string& flag_value, const char* env,
                    const json& config, const char* key, std::string fallback = {})
{
    if (app.get_option(flag)->count() > 0) {
        return flag_value;
    }
    if (const char* value = std::getenv(env); value != nullptr && *value != '\0') {
        return value;
    }
    if (config.contains(key)) {
        if (!config[key].is_string()) {
            throw esid::ValidationError(std::string("config: '") + key + "' must be a string");
        }
        return config[key].get<std::string>();
    }
    return fallback;
}

Settings resolve_settings(const CLI::App& app, const Settings& flags)
{
    json config = json::object();
    if (!flags.config.empty()) {
        config = esid::read_json_file(flags.config);
        if (!config.is_object()) {
            throw esid::ValidationError("config: expected a JSON object");
        }
    }
    Settings s = flags;
    s.store    = resolve(app, "--store", flags.store, "ESID_STORE", config, "store");
    s.graph    = resolve(app, "--graph", flags.graph, "ESID_GRAPH", config, "graph");
    s.bind     = resolve(app, "--bind", flags.bind, "ESID_BIND", config, "bind", kDefaultBind);
    if (app.get_option("--threads")->count() == 0 && config.contains("threads")) {
        s.threads = static_cast<std::size_t>(esid::get_uint64(config, "threads", "config"));
    }
    if (app.get_option("--quiet")->count() == 0 && config.contains("quiet")) {
        s.quiet = config["quiet"].is_boolean() && config["quiet"].get<bool>();
    }
    return s;
}

void print(const Settings& s, const json& doc, const std::string& text)
{
    if (s.json) {
        std::cout << doc.dump() << '\n';
    }
    else if (!text.empty()) {
        std::cout << text << '\n';
    }
}

void log(const Settings& s, const std::string& line)
{
    if (!s.quiet) {
        std::cerr << line << '\n';
    }
}

esid::GraphModel load_graph_for(const Settings& s, const json& scenario_doc, const fs::path& scenario_path)
{
    if (!s.graph.empty()) {
        return esid::read_graph(s.graph);
    }
    auto reference = esid::scenario_graph_reference(scenario_doc);
    if (reference.empty()) {
        throw esid::ValidationError("no graph given: use --graph, ESID_GRAPH or the scenario's \"graph\" field");
    }
    fs::path path = reference;
    if (path.is_relative()) {
        path = scenario_path.parent_path() / path;
    }
    return esid::read_graph(path);
}

std::vector<esid::CaseRecord> read_cases(const fs::path& path, const esid::GraphModel& graph, const Settings& s)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw esid::NotFoundError("file not found: " + path.string());
    }
    auto ingested = esid::ingest_case_data(in, esid::DistrictRegistry(graph.districts()), graph.age_groups);
    if (ingested.report.rejected > 0) {
        log(s, "cases: " + std::to_string(ingested.report.rejected) + " rows rejected");
    }
    return ingested.records;
}

int cmd_run(const Settings& s, const RunArgs& args)
{
    if (args.out.empty() && s.store.empty()) {
        throw esid::ValidationError("run: give --out, --store or both");
    }
    const fs::path scenario_path = args.scenario;
    json doc                     = esid::read_json_file(scenario_path);
    auto graph                   = load_graph_for(s, doc, scenario_path);
    auto scenario                = esid::scenario_from_json(doc, graph.age_groups);
    if (args.seed) {
        scenario.seed = *args.seed;
    }
    if (args.members) {
        scenario.members = *args.members;
    }
    if (!args.cases.empty()) {
        graph = esid::with_initial_from_cases(graph, read_cases(args.cases, graph, s), scenario.start_date);
    }
    esid::validate_scenario(scenario, graph);

    std::optional<esid::StoreCatalog> store;
    std::string run_id = scenario.id;
    if (!s.store.empty()) {
        store.emplace(s.store);
        store->set_graph(graph);
        store->put_scenario(scenario);
        run_id = store->create_run(scenario.id);
        store->set_run_status(run_id, esid::RunStatus::Running);
    }

    esid::EnsembleOptions options;
    options.threads = s.threads;
    options.run_id  = run_id;

    const auto started = std::chrono::steady_clock::now();
    esid::SimulationResult result;
    try {
        result = esid::run_ensemble(scenario, graph, options);
    }
    catch (const std::exception& e) {
        if (store) {
            store->set_run_status(run_id, esid::RunStatus::Failed, e.what());
        }
        throw;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    if (!args.out.empty()) {
        esid::save_result(result, args.out);
    }
    if (store) {
        store->store_result(run_id, result);
    }

    std::ostringstream text;
    text << "run " << run_id << " done in " << std::fixed << std::setprecision(3) << seconds << " s ("
         << scenario.members << " members, " << graph.nodes.size() << " districts, " << scenario.num_days
         << " days)";
    json out = {{"run_id", run_id},
                {"scenario", scenario.id},
                {"wall_time_s", seconds},
                {"members", scenario.members},
                {"districts", graph.nodes.size()},
                {"num_days", scenario.num_days}};
    if (!args.out.empty()) {
        out["out"] = args.out;
        text << "\nwritten to " << args.out;
    }
    print(s, out, text.str());
    return kExitOk;
}

int cmd_validate(const Settings& s, const std::string& path)
{
    std::error_code ec;
    if (!fs::is_directory(path, ec)) {
        throw esid::NotFoundError("not a result directory: " + path);
    }
    auto report = esid::validate_format(path);
    json violations = json::array();
    std::string text;
    for (const auto& v : report.violations) {
        violations.push_back(v.message);
        text += v.message + '\n';
    }
    if (report.ok()) {
        text = path + ": ok";
    }
    else {
        text.pop_back();
    }
    print(s, {{"path", path}, {"ok", report.ok()}, {"violations", violations}}, text);
    return report.ok() ? kExitOk : kExitRuntime;
}

int cmd_export(const Settings& s, const ExportArgs& args)
{
    if (args.format != "csv" && args.format != "json") {
        throw esid::ValidationError("unsupported format '" + args.format + "' (use csv or json)");
    }
    auto compartment = esid::parse_compartment(args.compartment);
    if (!compartment) {
        throw esid::ValidationError("unknown compartment '" + args.compartment + "'");
    }

    std::shared_ptr<const esid::SimulationResult> result;
    std::error_code ec;
    if (fs::is_regular_file(fs::path(args.run) / esid::kMetadataFile, ec)) {
        result = std::make_shared<const esid::SimulationResult>(esid::load_result(args.run));
    }
    else if (!s.store.empty()) {
        esid::StoreCatalog store(s.store);
        result = store.result(args.run);
    }
    if (!result) {
        std::cerr << "error: unknown run '" << args.run << "'\n";
        return kExitRuntime;
    }

    auto district = result->find_district(args.district);
    if (!district) {
        throw esid::NotFoundError("unknown district '" + args.district + "'");
    }
    auto group = result->find_group(args.group);
    if (!group) {
        throw esid::NotFoundError("unknown age group '" + args.group + "'");
    }

    std::ostringstream body;
    if (args.format == "csv") {
        body << "day";
        for (int p : esid::kPercentiles) {
            body << ",p" << p;
        }
        body << '\n';
        for (int day = 0; day <= result->num_days(); ++day) {
            body << day;
            for (std::size_t p = 0; p < esid::kNumPercentiles; ++p) {
                body << ',' << json(result->at(p, *district, day, *group, *compartment)).dump();
            }
            body << '\n';
        }
    }
    else {
        json doc = {{"run", result->metadata().run_id},
                    {"scenario", result->metadata().scenario_id},
                    {"district", args.district},
                    {"group", args.group},
                    {"compartment", esid::compartment_code(*compartment)},
                    {"start_date", esid::format_date(result->metadata().start_date)},
                    {"percentiles", esid::kPercentiles}};
        json days = json::array();
        for (int day = 0; day <= result->num_days(); ++day) {
            days.push_back(day);
        }
        doc["days"]   = days;
        json values   = json::array();
        for (std::size_t p = 0; p < esid::kNumPercentiles; ++p) {
            json series = json::array();
            for (int day = 0; day <= result->num_days(); ++day) {
                series.push_back(result->at(p, *district, day, *group, *compartment));
            }
            values.push_back(series);
        }
        doc["values"] = values;
        body << doc.dump() << '\n';
    }

    if (args.out.empty()) {
        std::cout << body.str();
    }
    else {
        std::ofstream file(args.out, std::ios::binary);
        if (!file || !(file << body.str())) {
            throw esid::IoError("cannot write " + args.out);
        }
        log(s, "exported " + std::to_string(result->num_days() + 1) + " days to " + args.out);
    }
    return kExitOk;
}

int cmd_ingest(const Settings& s, const std::string& csv)
{
    if (s.store.empty()) {
        throw esid::ValidationError("ingest: --store is required");
    }
    esid::StoreCatalog store(s.store);
    if (!s.graph.empty()) {
        store.set_graph(esid::read_graph(s.graph));
    }
    if (!store.has_graph()) {
        throw esid::ValidationError("ingest: the store has no graph; pass --graph");
    }
    std::ifstream in(csv, std::ios::binary);
    if (!in) {
        throw esid::NotFoundError("file not found: " + csv);
    }
    auto report = store.ingest_cases(in);

    json errors = json::array();
    std::ostringstream text;
    text << "accepted " << report.accepted << ", rejected " << report.rejected << ", duplicates "
         << report.duplicates;
    for (const auto& e : report.errors) {
        errors.push_back({{"line", e.line}, {"reason", e.reason}});
        text << "\nline " << e.line << ": " << e.reason;
    }
    print(s,
          {{"accepted", report.accepted},
           {"rejected", report.rejected},
           {"duplicates", report.duplicates},
           {"errors", errors}},
          text.str());
    return kExitOk;
}

int cmd_search(const Settings& s, const std::string& query)
{
    std::optional<esid::DistrictRegistry> registry;
    if (!s.store.empty()) {
        esid::StoreCatalog store(s.store);
        registry.emplace(store.registry());
    }
    else if (!s.graph.empty()) {
        registry.emplace(esid::read_graph(s.graph).districts());
    }
    else {
        throw esid::ValidationError("search: give --store or --graph");
    }
    auto matches = registry->search(query);
    json results = json::array();
    std::string text;
    for (const auto& m : matches) {
        results.push_back({{"id", m.id}, {"name", m.name}});
        text += m.id + '\t' + m.name + '\n';
    }
    if (!text.empty()) {
        text.pop_back();
    }
    print(s, {{"query", query}, {"results", results}}, text);
    return kExitOk;
}

esid::api::HttpServer* g_server = nullptr;

extern "C" void on_signal(int)
{
    if (g_server != nullptr) {
        g_server->stop();
    }
}

int cmd_serve(const Settings& s, const std::string& static_dir)
{
    if (s.store.empty()) {
        throw esid::ValidationError("serve: --store is required");
    }
    auto [host, port] = esid::api::parse_bind_address(s.bind);
    esid::StoreCatalog store(s.store);
    esid::api::ServiceOptions options;
    options.ensemble_threads = s.threads;
    esid::api::Service service(store, options);
    esid::api::HttpServer server(service);
    if (!static_dir.empty() && !server.mount_static(static_dir)) {
        throw esid::NotFoundError("static directory not found: " + static_dir);
    }
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    log(s, "serving " + s.store + " on http://" + host + ":" + std::to_string(port));
    bool ok  = server.listen(host, port);
    g_server = nullptr;
    if (!ok) {
        throw esid::IoError("cannot listen on " + s.bind);
    }
    return kExitOk;
}

int exit_code(esid::ErrorCode code)
{
    switch (code) {
    case esid::ErrorCode::Validation:
    case esid::ErrorCode::NotFound:
    case esid::ErrorCode::Format:
        return kExitUsage;
    default:
        return kExitRuntime;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"ESID scenario simulation and data service"};
    app.require_subcommand(1);

    Settings flags;
    app.add_option("--config", flags.config, "JSON config file (store, graph, bind, threads, quiet)");
    app.add_option("--store", flags.store, "store directory [env ESID_STORE]");
    app.add_option("--graph", flags.graph, "district graph file [env ESID_GRAPH]");
    app.add_option("--bind", flags.bind, "serve address host:port [env ESID_BIND]");
    app.add_option("--threads", flags.threads, "ensemble worker threads, 0 = all cores");
    app.add_flag("--json", flags.json, "machine-readable output");
    app.add_flag("-q,--quiet", flags.quiet, "suppress progress messages");

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "run a scenario ensemble");
    run->add_option("scenario", run_args.scenario, "scenario file")->required();
    run->add_option("--out", run_args.out, "result directory");
    run->add_option("--seed", run_args.seed, "override the scenario seed");
    run->add_option("--members", run_args.members, "override the ensemble size")->check(CLI::PositiveNumber);
    run->add_option("--cases", run_args.cases, "case data CSV to initialize districts at the start date");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "check a result directory against the format");
    validate->add_option("path", validate_path, "result directory")->required();

    ExportArgs export_args;
    auto* exp = app.add_subcommand("export", "export the percentile series of one district");
    exp->add_option("run", export_args.run, "run id in the store, or a result directory")->required();
    exp->add_option("--district", export_args.district, "district id, default national");
    exp->add_option("--compartment", export_args.compartment, "compartment code or name")->required();
    exp->add_option("--group", export_args.group, "age group label, default total");
    exp->add_option("--format", export_args.format, "csv or json");
    exp->add_option("--out", export_args.out, "output file, default stdout");

    std::string ingest_path;
    auto* ingest = app.add_subcommand("ingest", "ingest case data into the store");
    ingest->add_option("csv", ingest_path, "case data CSV")->required();

    std::string query;
    auto* search = app.add_subcommand("search", "search districts by name or id");
    search->add_option("query", query, "search text")->required();

    std::string static_dir;
    auto* serve = app.add_subcommand("serve", "serve the HTTP API");
    serve->add_option("--static", static_dir, "directory served under /");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Settings s = resolve_settings(app, flags);
        if (*run) {
            return cmd_run(s, run_args);
        }
        if (*validate) {
            return cmd_validate(s, validate_path);
        }
        if (*exp) {
            return cmd_export(s, export_args);
        }
        if (*ingest) {
            return cmd_ingest(s, ingest_path);
        }
        if (*search) {
            return cmd_search(s, query);
        }
        if (*serve) {
            return cmd_serve(s, static_dir);
        }
    }
    catch (const esid::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.code());
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}
