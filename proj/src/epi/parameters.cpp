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
#include "esid/epi/parameters.h"
#include "esid/utils/error.h"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace esid
{

namespace
{

constexpr std::array<ParameterField, kNumParameterFields> kFields = {{
    {"latent_days", &GroupParameters::latent_days, ParameterDomain::Duration},
    {"nonsymptomatic_days", &GroupParameters::nonsymptomatic_days, ParameterDomain::Duration},
    {"symptomatic_days", &GroupParameters::symptomatic_days, ParameterDomain::Duration},
    {"severe_days", &GroupParameters::severe_days, ParameterDomain::Duration},
    {"critical_days", &GroupParameters::critical_days, ParameterDomain::Duration},
    {"symptomatic_fraction", &GroupParameters::symptomatic_fraction, ParameterDomain::Probability},
    {"severe_fraction", &GroupParameters::severe_fraction, ParameterDomain::Probability},
    {"critical_fraction", &GroupParameters::critical_fraction, ParameterDomain::Probability},
    {"death_fraction", &GroupParameters::death_fraction, ParameterDomain::Probability},
    {"transmission_probability", &GroupParameters::transmission_probability, ParameterDomain::NonNegative},
    {"symptomatic_infectiousness", &GroupParameters::symptomatic_infectiousness, ParameterDomain::Probability},
}};

constexpr std::array<std::string_view, kNumLocations> kLocationNames = {"home", "school", "work", "other"};

} // namespace

std::span<const ParameterField, kNumParameterFields> parameter_fields()
{
    return kFields;
}

std::optional<std::size_t> find_parameter_field(std::string_view name)
{
    for (std::size_t i = 0; i < kFields.size(); ++i) {
        if (kFields[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

bool in_domain(ParameterDomain domain, double value)
{
    if (!std::isfinite(value)) {
        return false;
    }
    switch (domain) {
    case ParameterDomain::Duration:
        return value > 0;
    case ParameterDomain::Probability:
        return value >= 0 && value <= 1;
    case ParameterDomain::NonNegative:
        return value >= 0;
    }
    return false;
}

std::string_view domain_description(ParameterDomain domain)
{
    switch (domain) {
    case ParameterDomain::Duration:
        return "must be > 0";
    case ParameterDomain::Probability:
        return "must be in [0, 1]";
    case ParameterDomain::NonNegative:
        return "must be >= 0";
    }
    return "";
}

void validate_parameters(const EpiParameters& params)
{
    if (params.empty()) {
        throw ValidationError("parameters: at least one age group is required");
    }
    for (std::size_t g = 0; g < params.size(); ++g) {
        for (const auto& field : kFields) {
            double value = params[g].*field.member;
            if (!in_domain(field.domain, value)) {
                throw ValidationError("parameters: group " + std::to_string(g) + " field " +
                                      std::string(field.name) + " " + std::string(domain_description(field.domain)));
            }
        }
    }
}

std::string_view location_name(Location loc)
{
    return kLocationNames[static_cast<std::size_t>(loc)];
}

std::optional<Location> parse_location(std::string_view text)
{
    for (auto loc : kAllLocations) {
        auto name = location_name(loc);
        if (name.size() == text.size() &&
            std::equal(name.begin(), name.end(), text.begin(), [](char a, char b) {
                return a == std::tolower(static_cast<unsigned char>(b));
            })) {
            return loc;
        }
    }
    return std::nullopt;
}

ContactMatrix ContactMatrices::total() const
{
    ContactMatrix sum(num_groups());
    for (const auto& m : by_location) {
        for (std::size_t a = 0; a < sum.size(); ++a) {
            for (std::size_t b = 0; b < sum.size(); ++b) {
                sum(a, b) += m(a, b);
            }
        }
    }
    return sum;
}

void ContactMatrices::validate(std::size_t num_groups) const
{
    for (auto loc : kAllLocations) {
        const auto& m = (*this)[loc];
        if (m.size() != num_groups) {
            throw ValidationError("contacts: " + std::string(location_name(loc)) + " matrix must be " +
                                  std::to_string(num_groups) + "x" + std::to_string(num_groups));
        }
        for (double v : m.values()) {
            if (!std::isfinite(v) || v < 0) {
                throw ValidationError("contacts: " + std::string(location_name(loc)) +
                                      " matrix entries must be finite and >= 0");
            }
        }
    }
}

void validate_damping(const Damping& damping, std::size_t num_groups)
{
    std::string prefix = "damping '" + damping.id + "': ";
    if (damping.locations.none()) {
        throw ValidationError(prefix + "locations must not be empty");
    }
    if (!std::isfinite(damping.strength) || damping.strength < 0 || damping.strength > 1) {
        throw ValidationError(prefix + "strength must be in [0, 1]");
    }
    if (damping.start_day < 0) {
        throw ValidationError(prefix + "start_day must be >= 0");
    }
    if (damping.end_day <= damping.start_day) {
        throw ValidationError(prefix + "end_day must be > start_day");
    }
    if (!damping.groups.empty() && damping.groups.size() != num_groups) {
        throw ValidationError(prefix + "groups mask must have one entry per age group");
    }
}

} // namespace esid
