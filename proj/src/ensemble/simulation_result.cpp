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
#include "esid/ensemble/simulation_result.h"
#include "esid/utils/error.h"

#include <algorithm>
#include <cmath>
#include <vector>

namespace esid
{

std::optional<std::size_t> percentile_index(int percentile)
{
    for (std::size_t i = 0; i < kNumPercentiles; ++i) {
        if (kPercentiles[i] == percentile) {
            return i;
        }
    }
    return std::nullopt;
}

SimulationResult::SimulationResult(ResultMetadata metadata)
    : m_metadata(std::move(metadata))
{
    if (m_metadata.num_days < 1) {
        throw ValidationError("result: num_days must be >= 1");
    }
    if (m_metadata.districts.empty() || m_metadata.groups.empty()) {
        throw ValidationError("result: districts and groups must not be empty");
    }
    m_values.assign(kNumPercentiles * num_districts() * static_cast<std::size_t>(num_days() + 1) * num_groups() *
                        kNumCompartments,
                    0.0);
}

std::size_t SimulationResult::index(std::size_t percentile, std::size_t district, int day, std::size_t group,
                                    Compartment c) const
{
    std::size_t days = static_cast<std::size_t>(num_days() + 1);
    return (((percentile * num_districts() + district) * days + static_cast<std::size_t>(day)) * num_groups() +
            group) *
               kNumCompartments +
           index_of(c);
}

std::span<double> SimulationResult::block(std::size_t percentile, std::size_t district, int day)
{
    return std::span<double>(m_values).subspan(index(percentile, district, day, 0, Compartment::Susceptible),
                                               num_groups() * kNumCompartments);
}

std::span<const double> SimulationResult::block(std::size_t percentile, std::size_t district, int day) const
{
    return std::span<const double>(m_values).subspan(index(percentile, district, day, 0, Compartment::Susceptible),
                                                     num_groups() * kNumCompartments);
}

std::optional<std::size_t> SimulationResult::find_district(std::string_view id) const
{
    for (std::size_t i = 0; i < m_metadata.districts.size(); ++i) {
        if (m_metadata.districts[i].id == id) {
            return i;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> SimulationResult::find_group(std::string_view label) const
{
    for (std::size_t i = 0; i < m_metadata.groups.size(); ++i) {
        if (m_metadata.groups[i] == label) {
            return i;
        }
    }
    return std::nullopt;
}

double percentile_sorted(std::span<const double> sorted, double q)
{
    if (sorted.empty()) {
        throw ValidationError("percentile: sample must not be empty");
    }
    if (!(q >= 0 && q <= 100)) {
        throw ValidationError("percentile: q must be in [0, 100]");
    }
    double rank    = q / 100.0 * static_cast<double>(sorted.size() - 1);
    auto lo        = static_cast<std::size_t>(std::floor(rank));
    auto hi        = std::min(lo + 1, sorted.size() - 1);
    double frac    = rank - static_cast<double>(lo);
    double a       = sorted[lo];
    double b       = sorted[hi];
    // clamp keeps results ordered in q despite rounding
    return std::clamp(a + frac * (b - a), a, b);
}

double percentile(std::span<const double> samples, double q)
{
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    return percentile_sorted(sorted, q);
}

std::string_view trend_name(Trend trend)
{
    switch (trend) {
    case Trend::Increasing:
        return "increasing";
    case Trend::Stable:
        return "stable";
    case Trend::Decreasing:
        return "decreasing";
    }
    return "";
}

TrendIndicator trend_indicator(const SimulationResult& result, std::size_t district, std::size_t group,
                               Compartment compartment, int day)
{
    if (day < 0 || day > result.num_days()) {
        throw ValidationError("trend: day " + std::to_string(day) + " outside [0, " +
                              std::to_string(result.num_days()) + "]");
    }
    double base = result.at(kMedianIndex, district, 0, group, compartment);
    double now  = result.at(kMedianIndex, district, day, group, compartment);
    TrendIndicator out;
    if (base > 0) {
        double r            = (now - base) / base;
        out.relative_change = r;
        out.trend = std::abs(r) < kStableThreshold ? Trend::Stable : (r > 0 ? Trend::Increasing : Trend::Decreasing);
    }
    else {
        out.trend = now > 0 ? Trend::Increasing : Trend::Stable;
    }
    return out;
}

} // namespace esid
