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
#ifndef ESID_UTILS_JSON_UTIL_H
#define ESID_UTILS_JSON_UTIL_H

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace esid
{

// Typed accessors that report the JSON path of a missing or mistyped field as ValidationError.

const nlohmann::json& require(const nlohmann::json& obj, std::string_view key, std::string_view path);
double get_number(const nlohmann::json& obj, std::string_view key, std::string_view path);
int get_int(const nlohmann::json& obj, std::string_view key, std::string_view path);
std::uint64_t get_uint64(const nlohmann::json& obj, std::string_view key, std::string_view path);
std::string get_string(const nlohmann::json& obj, std::string_view key, std::string_view path);
std::vector<double> get_number_array(const nlohmann::json& value, std::string_view path);

/// Reads and parses a JSON file. Missing files raise NotFoundError("file not found: ..."),
/// syntax errors ValidationError.
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Writes with LF line endings and a trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& value);

} // namespace esid

#endif // ESID_UTILS_JSON_UTIL_H
