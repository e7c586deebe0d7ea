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
#include "esid/store/result_io.h"
#include "esid/utils/error.h"
#include "esid/utils/json_util.h"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace esid
{

using nlohmann::json;
namespace fs = std::filesystem;

namespace
{

json metadata_to_json(const ResultMetadata& m)
{
    json districts = json::array();
    for (const auto& d : m.districts) {
        districts.push_back({{"id", d.id}, {"name", d.name}});
    }
    json compartments = json::array();
    for (auto c : kAllCompartments) {
        compartments.push_back(compartment_code(c));
    }
    return {{"format", "esid-result"},
            {"version", kResultFormatVersion},
            {"scenario_id", m.scenario_id},
            {"run_id", m.run_id},
            {"seed", m.seed},
            {"members", m.members},
            {"created", m.created},
            {"start_date", format_date(m.start_date)},
            {"num_days", m.num_days},
            {"percentiles", kPercentiles},
            {"compartments", std::move(compartments)},
            {"groups", m.groups},
            {"districts", std::move(districts)}};
}

ResultMetadata metadata_from_json(const json& doc)
{
    const std::string p = "metadata";
    if (get_string(doc, "format", p) != "esid-result") {
        throw ValidationError("metadata.format: expected \"esid-result\"");
    }
    if (get_int(doc, "version", p) != kResultFormatVersion) {
        throw ValidationError("metadata.version: unsupported version");
    }
    ResultMetadata m;
    m.scenario_id = get_string(doc, "scenario_id", p);
    m.run_id      = get_string(doc, "run_id", p);
    m.seed        = get_uint64(doc, "seed", p);
    m.members     = static_cast<std::size_t>(get_uint64(doc, "members", p));
    m.created     = get_string(doc, "created", p);
    m.start_date  = parse_date_or_throw(get_string(doc, "start_date", p), "metadata.start_date");
    m.num_days    = get_int(doc, "num_days", p);
    if (m.num_days < 1 || m.members < 1) {
        throw ValidationError("metadata: num_days and members must be >= 1");
    }

    const auto& percentiles = require(doc, "percentiles", p);
    if (percentiles != json(kPercentiles)) {
        throw ValidationError("metadata.percentiles: expected [5, 25, 50, 75, 95]");
    }
    const auto& compartments = require(doc, "compartments", p);
    json expected            = json::array();
    for (auto c : kAllCompartments) {
        expected.push_back(compartment_code(c));
    }
    if (compartments != expected) {
        throw ValidationError("metadata.compartments: expected [S, E, C, I, H, U, R, D]");
    }

    const auto& groups = require(doc, "groups", p);
    if (!groups.is_array() || groups.size() < 2) {
        throw ValidationError("metadata.groups: expected at least one age group followed by \"total\"");
    }
    std::set<std::string> seen_groups;
    for (const auto& g : groups) {
        if (!g.is_string() || !seen_groups.insert(g.get<std::string>()).second) {
            throw ValidationError("metadata.groups: labels must be unique strings");
        }
        m.groups.push_back(g.get<std::string>());
    }
    if (m.groups.back() != kTotalGroup) {
        throw ValidationError("metadata.groups: last group must be \"total\"");
    }

    const auto& districts = require(doc, "districts", p);
    if (!districts.is_array() || districts.size() < 2) {
        throw ValidationError("metadata.districts: expected at least one district followed by the national aggregate");
    }
    std::set<std::string> seen_ids;
    for (std::size_t i = 0; i < districts.size(); ++i) {
        auto path = "metadata.districts[" + std::to_string(i) + "]";
        DistrictLabel label{get_string(districts[i], "id", path), get_string(districts[i], "name", path)};
        if (!seen_ids.insert(label.id).second) {
            throw ValidationError(path + ".id: duplicate district id");
        }
        m.districts.push_back(std::move(label));
    }
    if (m.districts.back().id != kNationalDistrict) {
        throw ValidationError("metadata.districts: last district must be the national aggregate \"00000\"");
    }
    return m;
}

std::string cell_name(const SimulationResult& r, std::size_t d, int day, std::size_t g, Compartment c)
{
    return "district " + r.metadata().districts[d].id + " day " + std::to_string(day) + " group " +
           r.metadata().groups[g] + " compartment " + std::string(compartment_code(c));
}

struct ReadOutcome {
    std::optional<SimulationResult> result;
    FormatReport report;
};

ReadOutcome read_result(const fs::path& directory)
{
    ReadOutcome out;
    auto add = [&](ViolationKind kind, std::string message) {
        out.report.violations.push_back({kind, std::move(message)});
    };

    auto metadata_path = directory / kMetadataFile;
    if (!fs::is_regular_file(metadata_path)) {
        add(ViolationKind::MissingMetadata, "missing metadata: " + metadata_path.string());
        return out;
    }
    ResultMetadata meta;
    try {
        std::ifstream in(metadata_path, std::ios::binary);
        meta = metadata_from_json(json::parse(in));
    }
    catch (const json::exception& e) {
        add(ViolationKind::Schema, std::string("metadata.json: invalid JSON (") + e.what() + ")");
        return out;
    }
    catch (const ValidationError& e) {
        add(ViolationKind::Schema, e.what());
        return out;
    }

    SimulationResult result(meta);
    const std::size_t districts = result.num_districts();
    const std::size_t groups    = result.num_groups();
    const int days              = result.num_days() + 1;
    const std::size_t expected  = kNumPercentiles * districts * static_cast<std::size_t>(days);
    std::vector<bool> seen(expected, false);
    auto record_index = [&](std::size_t p, std::size_t d, int day) {
        return (p * districts + d) * static_cast<std::size_t>(days) + static_cast<std::size_t>(day);
    };

    auto results_path = directory / kResultsFile;
    std::ifstream in(results_path, std::ios::binary);
    if (!in) {
        add(ViolationKind::LengthMismatch,
            "length mismatch: missing " + std::string(kResultsFile) + ", expected " + std::to_string(expected) +
                " records");
        return out;
    }

    std::string line;
    std::size_t line_no = 0;
    std::size_t records = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        ++records;
        std::string where = std::string(kResultsFile) + " line " + std::to_string(line_no);
        json rec;
        try {
            rec = json::parse(line);
        }
        catch (const json::exception&) {
            add(ViolationKind::Schema, where + ": invalid JSON");
            continue;
        }
        if (!rec.is_object() || !rec.contains("percentile") || !rec["percentile"].is_number_integer() ||
            !rec.contains("district") || !rec["district"].is_string() || !rec.contains("day") ||
            !rec["day"].is_number_integer() || !rec.contains("values") || !rec["values"].is_array()) {
            add(ViolationKind::Schema, where + ": expected {percentile, district, day, values}");
            continue;
        }
        auto p   = percentile_index(rec["percentile"].get<int>());
        auto d   = result.find_district(rec["district"].get<std::string>());
        int day  = rec["day"].get<int>();
        if (!p || !d || day < 0 || day >= days) {
            add(ViolationKind::Schema, where + ": percentile, district or day outside the declared dimensions");
            continue;
        }
        const auto& values = rec["values"];
        bool shape_ok      = values.size() == groups;
        for (std::size_t g = 0; shape_ok && g < groups; ++g) {
            shape_ok = values[g].is_array() && values[g].size() == kNumCompartments;
        }
        if (!shape_ok) {
            add(ViolationKind::LengthMismatch, "length mismatch: " + where + ": expected " + std::to_string(groups) +
                                                   " groups of " + std::to_string(kNumCompartments) + " values");
            continue;
        }
        auto idx = record_index(*p, *d, day);
        if (seen[idx]) {
            add(ViolationKind::DuplicateRecord, where + ": duplicate record for percentile " +
                                                    std::to_string(kPercentiles[*p]) + " district " +
                                                    meta.districts[*d].id + " day " + std::to_string(day));
            continue;
        }
        seen[idx] = true;
        for (std::size_t g = 0; g < groups; ++g) {
            for (auto c : kAllCompartments) {
                const auto& v = values[g][index_of(c)];
                double x      = v.is_number() ? v.get<double>() : std::nan("");
                if (!std::isfinite(x) || x < 0) {
                    add(ViolationKind::InvalidValue, "invalid value " + v.dump() + " at percentile " +
                                                         std::to_string(kPercentiles[*p]) + " " +
                                                         cell_name(result, *d, day, g, c) + " (must be finite and >= 0)");
                }
                result.at(*p, *d, day, g, c) = x;
            }
        }
    }
    if (records != expected) {
        add(ViolationKind::LengthMismatch, "length mismatch: expected " + std::to_string(expected) + " records, found " +
                                               std::to_string(records));
    }

    for (std::size_t d = 0; d < districts; ++d) {
        for (int day = 0; day < days; ++day) {
            bool complete = true;
            for (std::size_t p = 0; p < kNumPercentiles; ++p) {
                if (!seen[record_index(p, d, day)]) {
                    complete = false;
                    add(ViolationKind::MissingRecord, "missing record: percentile " + std::to_string(kPercentiles[p]) +
                                                          " district " + meta.districts[d].id + " day " +
                                                          std::to_string(day));
                }
            }
            if (!complete) {
                continue;
            }
            for (std::size_t g = 0; g < groups; ++g) {
                for (auto c : kAllCompartments) {
                    for (std::size_t p = 1; p < kNumPercentiles; ++p) {
                        double lo = result.at(p - 1, d, day, g, c);
                        double hi = result.at(p, d, day, g, c);
                        if (hi < lo) {
                            add(ViolationKind::NonMonotonePercentiles,
                                "percentile " + std::to_string(kPercentiles[p]) + " < percentile " +
                                    std::to_string(kPercentiles[p - 1]) + " at " + cell_name(result, d, day, g, c));
                        }
                    }
                    if (day == 0) {
                        for (std::size_t p = 1; p < kNumPercentiles; ++p) {
                            if (result.at(p, d, 0, g, c) != result.at(0, d, 0, g, c)) {
                                add(ViolationKind::InitialMismatch,
                                    "day-0 value of percentile " + std::to_string(kPercentiles[p]) +
                                        " differs from percentile 5 at " + cell_name(result, d, 0, g, c));
                            }
                        }
                    }
                }
            }
        }
    }
    out.result = std::move(result);
    return out;
}

} // namespace

void save_result(const SimulationResult& result, const fs::path& directory)
{
    std::error_code ec;
    fs::create_directories(directory, ec);
    if (ec) {
        throw IoError("cannot create " + directory.string() + ": " + ec.message());
    }
    write_json_file(directory / kMetadataFile, metadata_to_json(result.metadata()));

    std::ofstream out(directory / kResultsFile, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + (directory / kResultsFile).string());
    }
    const auto& meta = result.metadata();
    for (std::size_t p = 0; p < kNumPercentiles; ++p) {
        for (std::size_t d = 0; d < result.num_districts(); ++d) {
            for (int day = 0; day <= result.num_days(); ++day) {
                auto block    = result.block(p, d, day);
                json values   = json::array();
                for (std::size_t g = 0; g < result.num_groups(); ++g) {
                    values.push_back(std::vector<double>(block.begin() + static_cast<std::ptrdiff_t>(g * kNumCompartments),
                                                         block.begin() + static_cast<std::ptrdiff_t>((g + 1) * kNumCompartments)));
                }
                json rec = {{"percentile", kPercentiles[p]},
                            {"district", meta.districts[d].id},
                            {"day", day},
                            {"values", std::move(values)}};
                out << rec.dump() << '\n';
            }
        }
    }
    if (!out) {
        throw IoError("cannot write " + (directory / kResultsFile).string());
    }
}

SimulationResult load_result(const fs::path& directory)
{
    auto outcome = read_result(directory);
    if (!outcome.report.ok()) {
        const auto& first = outcome.report.violations.front();
        switch (first.kind) {
        case ViolationKind::InvalidValue:
        case ViolationKind::NonMonotonePercentiles:
        case ViolationKind::InitialMismatch:
            throw ValidationError(first.message);
        default:
            throw FormatError(first.message);
        }
    }
    return std::move(*outcome.result);
}

FormatReport validate_format(const fs::path& directory)
{
    return read_result(directory).report;
}

} // namespace esid
