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
#ifndef ESID_ENSEMBLE_PARAMETER_RANGES_H
#define ESID_ENSEMBLE_PARAMETER_RANGES_H

#include "esid/ensemble/random.h"
#include "esid/epi/compartments.h"
#include "esid/epi/parameters.h"

#include "json.hpp"

#include <array>
#include <vector>

namespace esid
{

struct ParameterRange {
    double min = 0;
    double max = 0;

    bool operator==(const ParameterRange&) const = default;
};

/// Ranges for every field of GroupParameters, in parameter_fields() order.
using GroupParameterRanges = std::array<ParameterRange, kNumParameterFields>;

/// One entry per age group.
using ParameterRanges = std::vector<GroupParameterRanges>;

/// Degenerate ranges pinned at `point`.
GroupParameterRanges fixed_ranges(const GroupParameters& point);

/// Throws ValidationError naming group and field if min > max or a bound leaves the field's domain.
void validate_ranges(const ParameterRanges& ranges, const AgeGroupSpec& groups);

/**
 * Draws every field independently and uniformly from its range, group by group in field order.
 * Exactly one variate is consumed per field, also for degenerate ranges.
 */
EpiParameters sample_parameters(const ParameterRanges& ranges, RandomStream& rng);

/**
 * JSON form: either one object applied to all groups or an array with one object per group.
 * Each object maps field names to a number (fixed value) or [min, max]. Fields not mentioned
 * keep the values from `defaults`.
 */
ParameterRanges ranges_from_json(const nlohmann::json& value, const AgeGroupSpec& groups,
                                 const ParameterRanges& defaults);
nlohmann::json ranges_to_json(const ParameterRanges& ranges);

} // namespace esid

#endif // ESID_ENSEMBLE_PARAMETER_RANGES_H
