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
#include "esid/store/case_data.h"
#include "esid/store/registry.h"
#include "esid/utils/error.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

namespace esid
{

namespace
{

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

/// Splits one CSV line; double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv(std::string_view line)
{
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                current += '"';
                ++i;
            }
            else if (c == '"') {
                quoted = false;
            }
            else {
                current += c;
            }
        }
        else if (c == '"') {
            quoted = true;
        }
        else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        }
        else {
            current += c;
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

bool parse_count(std::string_view text, double& out)
{
    text = trim(text);
    if (text.empty()) {
        return false;
    }
    auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    return res.ec == std::errc{} && res.ptr == text.data() + text.size() && std::isfinite(out);
}

std::string format_number(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace

IngestResult ingest_case_data(std::istream& csv, const DistrictRegistry& registry, const AgeGroupSpec& groups)
{
    IngestResult result;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen    = false;

    struct Slot {
        CaseRecord record;
        std::size_t group;
    };
    std::map<std::tuple<std::string, std::chrono::sys_days, std::size_t>, Slot> rows;

    while (std::getline(csv, line)) {
        ++line_no;
        std::string_view view = line;
        if (line_no == 1 && view.substr(0, 3) == "\xEF\xBB\xBF") {
            view.remove_prefix(3);
        }
        view = trim(view);
        if (!header_seen) {
            if (view.empty()) {
                continue;
            }
            if (view != kCaseCsvHeader) {
                throw FormatError("case data: expected header '" + std::string(kCaseCsvHeader) + "' on line " +
                                  std::to_string(line_no));
            }
            header_seen = true;
            continue;
        }
        if (view.empty()) {
            continue;
        }
        auto reject = [&](std::string reason) {
            ++result.report.rejected;
            result.report.errors.push_back({line_no, std::move(reason)});
        };

        auto fields = split_csv(view);
        if (fields.size() != 6) {
            reject("expected 6 columns, got " + std::to_string(fields.size()));
            continue;
        }
        auto date = parse_date(trim(fields[0]));
        if (!date) {
            reject("invalid date");
            continue;
        }
        std::string district(trim(fields[1]));
        if (!registry.contains(district)) {
            reject("unknown district '" + district + "'");
            continue;
        }
        std::string group(trim(fields[2]));
        auto group_index = groups.find(group);
        if (!group_index) {
            reject("unknown age group '" + group + "'");
            continue;
        }
        double counts[3];
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            if (!parse_count(fields[3 + i], counts[i])) {
                reject("invalid number in column " + std::to_string(4 + i));
                ok = false;
            }
            else if (counts[i] < 0) {
                reject("negative count");
                ok = false;
            }
        }
        if (!ok) {
            continue;
        }
        if (counts[1] + counts[2] > counts[0]) {
            reject("inconsistent cumulative counts: deaths + recovered > confirmed");
            continue;
        }
        CaseRecord record{*date, district, group, counts[0], counts[1], counts[2]};
        auto key = std::make_tuple(district, std::chrono::sys_days{*date}, *group_index);
        auto [it, inserted] = rows.insert_or_assign(key, Slot{record, *group_index});
        if (!inserted) {
            ++result.report.duplicates;
        }
        ++result.report.accepted;
    }
    if (!header_seen) {
        throw FormatError("case data: empty input");
    }
    result.records.reserve(rows.size());
    for (auto& [key, slot] : rows) {
        result.records.push_back(std::move(slot.record));
    }
    return result;
}

void write_case_csv(std::ostream& out, const std::vector<CaseRecord>& records)
{
    out << kCaseCsvHeader << '\n';
    for (const auto& r : records) {
        out << format_date(r.date) << ',' << r.district << ',' << r.group << ',' << format_number(r.confirmed) << ','
            << format_number(r.deaths) << ',' << format_number(r.recovered) << '\n';
    }
}

void CaseDatabase::merge(const std::vector<CaseRecord>& records)
{
    for (const auto& r : records) {
        auto g = m_groups.find(r.group);
        if (!g) {
            throw ValidationError("case data: unknown age group '" + r.group + "'");
        }
        m_records.insert_or_assign(Key{r.district, std::chrono::sys_days{r.date}, *g}, r);
    }
}

std::vector<CaseRecord> CaseDatabase::records() const
{
    std::vector<CaseRecord> out;
    out.reserve(m_records.size());
    for (const auto& [key, r] : m_records) {
        out.push_back(r);
    }
    return out;
}

std::vector<CaseRecord> CaseDatabase::on_date(const Date& date) const
{
    std::vector<CaseRecord> out;
    std::chrono::sys_days day{date};
    for (const auto& [key, r] : m_records) {
        if (key.date == day) {
            out.push_back(r);
        }
    }
    return out;
}

CaseSeries CaseDatabase::series(std::string_view district, std::string_view group) const
{
    const bool total = group == "total";
    std::optional<std::size_t> group_index;
    if (!total) {
        group_index = m_groups.find(group);
        if (!group_index) {
            throw NotFoundError("unknown age group '" + std::string(group) + "'");
        }
    }
    CaseSeries s;
    auto first = m_records.lower_bound(Key{std::string(district), std::chrono::sys_days::min(), 0});
    for (auto it = first; it != m_records.end() && it->first.district == district; ++it) {
        const auto& [key, r] = *it;
        if (!total && key.group != *group_index) {
            continue;
        }
        if (s.dates.empty() || s.dates.back() != r.date) {
            s.dates.push_back(r.date);
            s.confirmed.push_back(0);
            s.deaths.push_back(0);
            s.recovered.push_back(0);
            s.active.push_back(0);
        }
        s.confirmed.back() += r.confirmed;
        s.deaths.back() += r.deaths;
        s.recovered.back() += r.recovered;
        s.active.back() += r.active();
    }
    return s;
}

std::vector<CompartmentTensor> initialize_from_cases(const std::vector<CaseRecord>& records, const GraphModel& graph,
                                                     const Date& date)
{
    const std::size_t groups = graph.age_groups.size();
    std::vector<CompartmentTensor> states(graph.nodes.size(), CompartmentTensor(groups));
    std::vector<std::vector<bool>> seen(graph.nodes.size(), std::vector<bool>(groups, false));

    for (const auto& r : records) {
        if (r.date != date) {
            continue;
        }
        auto d = graph.find(r.district);
        auto g = graph.age_groups.find(r.group);
        if (!d || !g) {
            continue;
        }
        std::string where = "district " + r.district + " group " + r.group;
        if (seen[*d][*g]) {
            throw ValidationError("initialization: duplicate record for " + where);
        }
        seen[*d][*g]    = true;
        double active   = r.active();
        double suscept  = graph.nodes[*d].district.population[*g] - r.confirmed;
        if (active < 0) {
            throw ValidationError("initialization: negative active cases for " + where);
        }
        if (suscept < 0) {
            throw ValidationError("initialization: confirmed cases exceed population for " + where);
        }
        auto& s                       = states[*d];
        s(*g, Compartment::Susceptible) = suscept;
        s(*g, Compartment::Infected)    = active;
        s(*g, Compartment::Recovered)   = r.recovered;
        s(*g, Compartment::Dead)        = r.deaths;
    }
    for (std::size_t d = 0; d < states.size(); ++d) {
        for (std::size_t g = 0; g < groups; ++g) {
            if (!seen[d][g]) {
                throw ValidationError("initialization: no record for district " + graph.nodes[d].district.id +
                                      " group " + graph.age_groups[g].label + " on " + format_date(date));
            }
        }
    }
    return states;
}

GraphModel with_initial_from_cases(const GraphModel& graph, const std::vector<CaseRecord>& records, const Date& date)
{
    auto states    = initialize_from_cases(records, graph, date);
    GraphModel out = graph;
    for (std::size_t i = 0; i < out.nodes.size(); ++i) {
        out.nodes[i].initial = std::move(states[i]);
    }
    return out;
}

} // namespace esid
