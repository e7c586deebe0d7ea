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
#include "esid/epi/epi_io.h"
#include "esid/utils/error.h"
#include "esid/utils/json_util.h"

namespace esid
{

using nlohmann::json;

AgeGroupSpec age_groups_from_json(const json& value)
{
    if (!value.is_array()) {
        throw ValidationError("age_groups: expected an array");
    }
    std::vector<AgeGroup> groups;
    for (std::size_t i = 0; i < value.size(); ++i) {
        auto path = "age_groups[" + std::to_string(i) + "]";
        groups.push_back({get_string(value[i], "label", path), get_number(value[i], "min_age", path),
                          get_number(value[i], "max_age", path)});
    }
    return AgeGroupSpec(std::move(groups));
}

json to_json(const AgeGroupSpec& groups)
{
    json out = json::array();
    for (const auto& g : groups.groups()) {
        out.push_back({{"label", g.label}, {"min_age", g.min_age}, {"max_age", g.max_age}});
    }
    return out;
}

ContactMatrices contacts_from_json(const json& value, std::size_t num_groups)
{
    if (!value.is_object()) {
        throw ValidationError("contacts: expected an object with home, school, work and other");
    }
    ContactMatrices contacts(num_groups);
    for (auto loc : kAllLocations) {
        std::string name(location_name(loc));
        const auto& m = require(value, name, "contacts");
        auto& target  = contacts[loc];
        if (m.is_number()) {
            target = ContactMatrix(num_groups, m.get<double>());
        }
        else {
            if (!m.is_array() || m.size() != num_groups) {
                throw ValidationError("contacts." + name + ": expected " + std::to_string(num_groups) + " rows");
            }
            for (std::size_t a = 0; a < num_groups; ++a) {
                auto row = get_number_array(m[a], "contacts." + name + "[" + std::to_string(a) + "]");
                if (row.size() != num_groups) {
                    throw ValidationError("contacts." + name + ": row " + std::to_string(a) + " must have " +
                                          std::to_string(num_groups) + " entries");
                }
                for (std::size_t b = 0; b < num_groups; ++b) {
                    target(a, b) = row[b];
                }
            }
        }
    }
    contacts.validate(num_groups);
    return contacts;
}

json to_json(const ContactMatrices& contacts)
{
    json out = json::object();
    for (auto loc : kAllLocations) {
        const auto& m = contacts[loc];
        json rows     = json::array();
        for (std::size_t a = 0; a < m.size(); ++a) {
            json row = json::array();
            for (std::size_t b = 0; b < m.size(); ++b) {
                row.push_back(m(a, b));
            }
            rows.push_back(std::move(row));
        }
        out[std::string(location_name(loc))] = std::move(rows);
    }
    return out;
}

Damping damping_from_json(const json& value, const AgeGroupSpec& groups, std::string_view default_id,
                          std::string_view path)
{
    std::string p(path);
    Damping d;
    d.id = value.contains("id") ? get_string(value, "id", p) : std::string(default_id);
    const auto& locations = require(value, "locations", p);
    if (locations.is_string() && locations.get<std::string>() == "all") {
        d.locations.set();
    }
    else if (locations.is_array()) {
        for (const auto& l : locations) {
            auto loc = l.is_string() ? parse_location(l.get<std::string>()) : std::nullopt;
            if (!loc) {
                throw ValidationError(p + ".locations: unknown location " + l.dump());
            }
            d.locations.set(static_cast<std::size_t>(*loc));
        }
    }
    else {
        throw ValidationError(p + ".locations: expected a list of locations or \"all\"");
    }
    d.strength  = get_number(value, "strength", p);
    d.start_day = get_int(value, "start_day", p);
    d.end_day   = get_int(value, "end_day", p);
    if (value.contains("groups")) {
        const auto& labels = value["groups"];
        if (!labels.is_array()) {
            throw ValidationError(p + ".groups: expected a list of age group labels");
        }
        d.groups.assign(groups.size(), false);
        for (const auto& l : labels) {
            auto idx = l.is_string() ? groups.find(l.get<std::string>()) : std::nullopt;
            if (!idx) {
                throw ValidationError(p + ".groups: unknown age group " + l.dump());
            }
            d.groups[*idx] = true;
        }
    }
    validate_damping(d, groups.size());
    return d;
}

json to_json(const Damping& damping, const AgeGroupSpec& groups)
{
    json locations = json::array();
    for (auto loc : kAllLocations) {
        if (damping.applies_to(loc)) {
            locations.push_back(location_name(loc));
        }
    }
    json out = {{"id", damping.id},
                {"locations", std::move(locations)},
                {"strength", damping.strength},
                {"start_day", damping.start_day},
                {"end_day", damping.end_day}};
    if (!damping.groups.empty()) {
        json labels = json::array();
        for (std::size_t g = 0; g < damping.groups.size(); ++g) {
            if (damping.groups[g]) {
                labels.push_back(groups[g].label);
            }
        }
        out["groups"] = std::move(labels);
    }
    return out;
}

} // namespace esid
