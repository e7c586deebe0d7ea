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
#ifndef ESID_EPI_EPI_IO_H
#define ESID_EPI_EPI_IO_H

#include "esid/epi/compartments.h"
#include "esid/epi/parameters.h"

#include "json.hpp"

#include <string_view>

namespace esid
{

AgeGroupSpec age_groups_from_json(const nlohmann::json& value);
nlohmann::json to_json(const AgeGroupSpec& groups);

/// Accepts one matrix per location, or a number meaning "every entry".
ContactMatrices contacts_from_json(const nlohmann::json& value, std::size_t num_groups);
nlohmann::json to_json(const ContactMatrices& contacts);

/**
 * Parses a damping object:
 * {"id": ..., "locations": ["home", ...] | "all", "strength": s, "start_day": a, "end_day": b, "groups": [labels]}
 * `default_id` is used when "id" is absent. The result is validated.
 */
Damping damping_from_json(const nlohmann::json& value, const AgeGroupSpec& groups, std::string_view default_id,
                          std::string_view path);
nlohmann::json to_json(const Damping& damping, const AgeGroupSpec& groups);

} // namespace esid

#endif // ESID_EPI_EPI_IO_H
