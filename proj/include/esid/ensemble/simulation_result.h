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
#ifndef ESID_ENSEMBLE_SIMULATION_RESULT_H
#define ESID_ENSEMBLE_SIMULATION_RESULT_H

#include "esid/epi/compartments.h"
#include "esid/utils/date.h"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace esid
{

/// Percentiles stored for every cell, ascending.
inline constexpr std::array<int, 5> kPercentiles = {5, 25, 50, 75, 95};
inline constexpr std::size_t kNumPercentiles     = kPercentiles.size();
inline constexpr std::size_t kMedianIndex        = 2;

std::optional<std::size_t> percentile_index(int percentile);

/// Label of the age-aggregated group. It is the last group of every result.
inline constexpr std::string_view kTotalGroup = "total";

/// Id of the national aggregate. It is the last district of every result.
inline constexpr std::string_view kNationalDistrict = "00000";

struct DistrictLabel {
    std::string id;
    std::string name;

    bool operator==(const DistrictLabel&) const = default;
};

struct ResultMetadata {
    std::string scenario_id;
    std::string run_id;
    std::uint64_t seed = 0;
    std::size_t members = 1;
    std::string created; ///< ISO 8601 UTC timestamp
    Date start_date{};
    int num_days = 1;
    std::vector<DistrictLabel> districts; ///< ends with the national aggregate
    std::vector<std::string> groups; ///< ends with "total"

    bool operator==(const ResultMetadata&) const = default;
};

/**
 * Percentile bands of an ensemble, indexed by (percentile, district, day, group, compartment).
 */
class SimulationResult
{
public:
    SimulationResult() = default;
    explicit SimulationResult(ResultMetadata metadata);

    const ResultMetadata& metadata() const
    {
        return m_metadata;
    }
    ResultMetadata& metadata()
    {
        return m_metadata;
    }

    std::size_t num_districts() const
    {
        return m_metadata.districts.size();
    }
    std::size_t num_groups() const
    {
        return m_metadata.groups.size();
    }
    int num_days() const
    {
        return m_metadata.num_days;
    }

    std::size_t index(std::size_t percentile, std::size_t district, int day, std::size_t group, Compartment c) const;

    double& at(std::size_t percentile, std::size_t district, int day, std::size_t group, Compartment c)
    {
        return m_values[index(percentile, district, day, group, c)];
    }
    double at(std::size_t percentile, std::size_t district, int day, std::size_t group, Compartment c) const
    {
        return m_values[index(percentile, district, day, group, c)];
    }

    /// The group x compartment block of one (percentile, district, day).
    std::span<double> block(std::size_t percentile, std::size_t district, int day);
    std::span<const double> block(std::size_t percentile, std::size_t district, int day) const;

    std::span<double> values()
    {
        return m_values;
    }
    std::span<const double> values() const
    {
        return m_values;
    }

    std::optional<std::size_t> find_district(std::string_view id) const;
    std::optional<std::size_t> find_group(std::string_view label) const;

    std::size_t national_index() const
    {
        return num_districts() - 1;
    }
    std::size_t total_group_index() const
    {
        return num_groups() - 1;
    }

    bool operator==(const SimulationResult&) const = default;

private:
    ResultMetadata m_metadata;
    std::vector<double> m_values;
};

/**
 * Sample percentile with linear interpolation between the closest order statistics at
 * rank q/100 * (n - 1) (Hyndman-Fan type 7). Throws ValidationError for an empty sample or q outside [0, 100].
 */
double percentile(std::span<const double> samples, double q);

/// Same as percentile() but for a sample that is already sorted ascending.
double percentile_sorted(std::span<const double> sorted, double q);

enum class Trend
{
    Increasing,
    Stable,
    Decreasing,
};

std::string_view trend_name(Trend trend);

struct TrendIndicator {
    std::optional<double> relative_change; ///< empty when the day-0 median is zero
    Trend trend = Trend::Stable;
};

/// Changes below this relative magnitude count as stable.
inline constexpr double kStableThreshold = 0.01;

/// Compares the median on `day` with the median on day 0.
TrendIndicator trend_indicator(const SimulationResult& result, std::size_t district, std::size_t group,
                               Compartment compartment, int day);

} // namespace esid

#endif // ESID_ENSEMBLE_SIMULATION_RESULT_H
