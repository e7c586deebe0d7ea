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
#ifndef ESID_EPI_COMPARTMENTS_H
#define ESID_EPI_COMPARTMENTS_H

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace esid
{

/**
 * Infection states of the SECIR-type model in canonical order.
 */
enum class Compartment : std::size_t
{
    Susceptible = 0,
    Exposed,
    Carrier, ///< infectious, non-symptomatic
    Infected, ///< infectious, symptomatic
    Severe,
    Critical,
    Recovered,
    Dead,
};

inline constexpr std::size_t kNumCompartments = 8;

inline constexpr std::array<Compartment, kNumCompartments> kAllCompartments = {
    Compartment::Susceptible, Compartment::Exposed,  Compartment::Carrier,   Compartment::Infected,
    Compartment::Severe,      Compartment::Critical, Compartment::Recovered, Compartment::Dead,
};

constexpr std::size_t index_of(Compartment c)
{
    return static_cast<std::size_t>(c);
}

/// One-letter code: S, E, C, I, H, U, R, D.
std::string_view compartment_code(Compartment c);

/// Display name, e.g. "Infectious non-symptomatic".
std::string_view compartment_name(Compartment c);

/// Accepts the one-letter code or the display name (case-insensitive).
std::optional<Compartment> parse_compartment(std::string_view text);

struct AgeGroup {
    std::string label;
    double min_age = 0; ///< inclusive, years
    double max_age = 0; ///< exclusive, years

    bool operator==(const AgeGroup&) const = default;
};

/**
 * Ordered list of age groups. Construction validates that there is at least one
 * group, labels are unique and bounds are ascending and non-overlapping.
 */
class AgeGroupSpec
{
public:
    AgeGroupSpec() = default;
    explicit AgeGroupSpec(std::vector<AgeGroup> groups);

    std::size_t size() const
    {
        return m_groups.size();
    }
    const AgeGroup& operator[](std::size_t i) const
    {
        return m_groups[i];
    }
    const std::vector<AgeGroup>& groups() const
    {
        return m_groups;
    }
    std::vector<std::string> labels() const;
    std::optional<std::size_t> find(std::string_view label) const;

    bool operator==(const AgeGroupSpec&) const = default;

private:
    std::vector<AgeGroup> m_groups;
};

/**
 * Person counts of one district at one instant, indexed by (age group, compartment).
 */
class CompartmentTensor
{
public:
    CompartmentTensor() = default;
    explicit CompartmentTensor(std::size_t num_groups)
        : m_num_groups(num_groups)
        , m_values(num_groups * kNumCompartments, 0.0)
    {
    }

    std::size_t num_groups() const
    {
        return m_num_groups;
    }

    double& operator()(std::size_t group, Compartment c)
    {
        return m_values[group * kNumCompartments + index_of(c)];
    }
    double operator()(std::size_t group, Compartment c) const
    {
        return m_values[group * kNumCompartments + index_of(c)];
    }

    std::span<double> values()
    {
        return m_values;
    }
    std::span<const double> values() const
    {
        return m_values;
    }
    std::span<const double> group(std::size_t g) const
    {
        return std::span<const double>(m_values).subspan(g * kNumCompartments, kNumCompartments);
    }

    /// Sum over all 8 compartments of one group, including the dead.
    double group_total(std::size_t g) const;
    /// Sum over all compartments except Dead.
    double group_living(std::size_t g) const;
    double total() const;

    bool operator==(const CompartmentTensor&) const = default;

private:
    std::size_t m_num_groups = 0;
    std::vector<double> m_values;
};

/// Throws ValidationError if any entry is negative or not finite.
void check_tensor(const CompartmentTensor& tensor, std::string_view what);

} // namespace esid

#endif // ESID_EPI_COMPARTMENTS_H
