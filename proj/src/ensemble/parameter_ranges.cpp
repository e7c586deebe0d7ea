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
#include "esid/ensemble/parameter_ranges.h"
#include "esid/utils/error.h"

#include <cmath>

namespace esid
{

using nlohmann::json;

GroupParameterRanges fixed_ranges(const GroupParameters& point)
{
    GroupParameterRanges out;
    auto fields = parameter_fields();
    for (std::size_t f = 0; f < kNumParameterFields; ++f) {
        double v = point.*fields[f].member;
        out[f]   = {v, v};
    }
    return out;
}

void validate_ranges(const ParameterRanges& ranges, const AgeGroupSpec& groups)
{
    if (ranges.size() != groups.size()) {
        throw ValidationError("parameters: expected ranges for " + std::to_string(groups.size()) + " age groups");
    }
    auto fields = parameter_fields();
    for (std::size_t g = 0; g < ranges.size(); ++g) {
        for (std::size_t f = 0; f < kNumParameterFields; ++f) {
            const auto& r = ranges[g][f];
            std::string name = "parameters[" + groups[g].label + "]." + std::string(fields[f].name);
            if (!(r.min <= r.max)) {
                throw ValidationError(name + ": min must be <= max");
            }
            if (!in_domain(fields[f].domain, r.min) || !in_domain(fields[f].domain, r.max)) {
                throw ValidationError(name + ": " + std::string(domain_description(fields[f].domain)));
            }
        }
    }
}

EpiParameters sample_parameters(const ParameterRanges& ranges, RandomStream& rng)
{
    auto fields = parameter_fields();
    EpiParameters params(ranges.size());
    for (std::size_t g = 0; g < ranges.size(); ++g) {
        for (std::size_t f = 0; f < kNumParameterFields; ++f) {
            const auto& r = ranges[g][f];
            if (!(r.min <= r.max)) {
                throw ValidationError("parameters: group " + std::to_string(g) + " field " +
                                      std::string(fields[f].name) + ": min must be <= max");
            }
            params[g].*fields[f].member = rng.uniform(r.min, r.max);
        }
    }
    return params;
}

namespace
{

void apply_group(const json& obj, GroupParameterRanges& target, const std::string& path)
{
    if (!obj.is_object()) {
        throw ValidationError(path + ": expected an object of parameter ranges");
    }
    for (const auto& [key, value] : obj.items()) {
        auto f = find_parameter_field(key);
        if (!f) {
            throw ValidationError(path + "." + key + ": unknown parameter");
        }
        if (value.is_number()) {
            double v   = value.get<double>();
            target[*f] = {v, v};
        }
        else if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
            target[*f] = {value[0].get<double>(), value[1].get<double>()};
        }
        else {
            throw ValidationError(path + "." + key + ": expected a number or [min, max]");
        }
    }
}

} // namespace

ParameterRanges ranges_from_json(const json& value, const AgeGroupSpec& groups, const ParameterRanges& defaults)
{
    ParameterRanges out = defaults;
    out.resize(groups.size(), fixed_ranges(GroupParameters{}));
    if (value.is_object()) {
        for (std::size_t g = 0; g < groups.size(); ++g) {
            apply_group(value, out[g], "parameters");
        }
    }
    else if (value.is_array()) {
        if (value.size() != groups.size()) {
            throw ValidationError("parameters: expected one entry per age group (" + std::to_string(groups.size()) +
                                  ")");
        }
        for (std::size_t g = 0; g < groups.size(); ++g) {
            apply_group(value[g], out[g], "parameters[" + groups[g].label + "]");
        }
    }
    else if (!value.is_null()) {
        throw ValidationError("parameters: expected an object or an array");
    }
    validate_ranges(out, groups);
    return out;
}

json ranges_to_json(const ParameterRanges& ranges)
{
    auto fields = parameter_fields();
    json out    = json::array();
    for (std::size_t g = 0; g < ranges.size(); ++g) {
        json obj = json::object();
        for (std::size_t f = 0; f < kNumParameterFields; ++f) {
            obj[std::string(fields[f].name)] = {ranges[g][f].min, ranges[g][f].max};
        }
        out.push_back(std::move(obj));
    }
    return out;
}

} // namespace esid
