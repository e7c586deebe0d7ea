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
#ifndef ESID_EPI_PARAMETERS_H
#define ESID_EPI_PARAMETERS_H

#include <array>
#include <bitset>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace esid
{

/**
 * Disease parameters of one age group.
 * Durations are in days, fractions are the probability of progressing to the next,
 * more severe stage (the remainder recovers).
 */
struct GroupParameters {
    double latent_days = 5.2; ///< time spent Exposed
    double nonsymptomatic_days = 4.2; ///< time spent infectious without symptoms
    double symptomatic_days = 7.0;
    double severe_days = 12.0;
    double critical_days = 8.0;
    double symptomatic_fraction = 0.7; ///< Carrier -> Infected
    double severe_fraction = 0.1; ///< Infected -> Severe
    double critical_fraction = 0.2; ///< Severe -> Critical
    double death_fraction = 0.3; ///< Critical -> Dead
    double transmission_probability = 0.05; ///< per contact
    double symptomatic_infectiousness = 0.5; ///< relative to non-symptomatic carriers

    bool operator==(const GroupParameters&) const = default;
};

/// One entry per age group.
using EpiParameters = std::vector<GroupParameters>;

enum class ParameterDomain
{
    Duration, ///< > 0
    Probability, ///< in [0, 1]
    NonNegative, ///< >= 0
};

struct ParameterField {
    std::string_view name;
    double GroupParameters::*member;
    ParameterDomain domain;
};

inline constexpr std::size_t kNumParameterFields = 11;

/// All fields of GroupParameters in declaration order. Sampling and file formats use this order.
std::span<const ParameterField, kNumParameterFields> parameter_fields();

std::optional<std::size_t> find_parameter_field(std::string_view name);

bool in_domain(ParameterDomain domain, double value);

std::string_view domain_description(ParameterDomain domain);

/// Throws ValidationError naming the group and field of the first invalid value.
void validate_parameters(const EpiParameters& params);

enum class Location : std::size_t
{
    Home = 0,
    School,
    Work,
    Other,
};

inline constexpr std::size_t kNumLocations = 4;
inline constexpr std::array<Location, kNumLocations> kAllLocations = {Location::Home, Location::School, Location::Work,
                                                                      Location::Other};

std::string_view location_name(Location loc);
std::optional<Location> parse_location(std::string_view text);

/**
 * Dense square matrix of daily contacts between age groups.
 * Entry (a, b) is the number of contacts a person of group a has with group b per day.
 */
class ContactMatrix
{
public:
    ContactMatrix() = default;
    explicit ContactMatrix(std::size_t size, double fill = 0.0)
        : m_size(size)
        , m_values(size * size, fill)
    {
    }

    std::size_t size() const
    {
        return m_size;
    }
    double& operator()(std::size_t row, std::size_t col)
    {
        return m_values[row * m_size + col];
    }
    double operator()(std::size_t row, std::size_t col) const
    {
        return m_values[row * m_size + col];
    }
    std::span<const double> values() const
    {
        return m_values;
    }

    bool operator==(const ContactMatrix&) const = default;

private:
    std::size_t m_size = 0;
    std::vector<double> m_values;
};

struct ContactMatrices {
    std::array<ContactMatrix, kNumLocations> by_location;

    explicit ContactMatrices(std::size_t num_groups = 0)
    {
        by_location.fill(ContactMatrix(num_groups));
    }

    ContactMatrix& operator[](Location loc)
    {
        return by_location[static_cast<std::size_t>(loc)];
    }
    const ContactMatrix& operator[](Location loc) const
    {
        return by_location[static_cast<std::size_t>(loc)];
    }

    std::size_t num_groups() const
    {
        return by_location[0].size();
    }

    /// Sum over all locations without any damping.
    ContactMatrix total() const;

    /// Throws ValidationError on shape mismatch or negative/non-finite entries.
    void validate(std::size_t num_groups) const;

    bool operator==(const ContactMatrices&) const = default;
};

/**
 * A non-pharmaceutical intervention: reduces contacts at the given locations by
 * `strength` on days [start_day, end_day).
 */
struct Damping {
    std::string id;
    std::bitset<kNumLocations> locations;
    double strength = 0.0;
    int start_day = 0;
    int end_day = 1;
    /// Empty means all groups. Otherwise one flag per age group; a contact (a, b) is
    /// damped if either a or b is flagged.
    std::vector<bool> groups;

    bool active_on(int day) const
    {
        return start_day <= day && day < end_day;
    }
    bool applies_to(Location loc) const
    {
        return locations.test(static_cast<std::size_t>(loc));
    }
    bool applies_to(std::size_t row, std::size_t col) const
    {
        return groups.empty() || groups[row] || groups[col];
    }

    bool operator==(const Damping&) const = default;
};

/// Throws ValidationError naming the offending field (e.g. "damping 'school': strength").
void validate_damping(const Damping& damping, std::size_t num_groups);

} // namespace esid

#endif // ESID_EPI_PARAMETERS_H
