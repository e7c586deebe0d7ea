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
#include "esid/utils/json_util.h"
#include "esid/utils/error.h"

#include <cmath>
#include <fstream>

namespace esid
{

namespace
{

std::string join(std::string_view path, std::string_view key)
{
    if (path.empty()) {
        return std::string(key);
    }
    return std::string(path) + "." + std::string(key);
}

} // namespace

const nlohmann::json& require(const nlohmann::json& obj, std::string_view key, std::string_view path)
{
    if (!obj.is_object()) {
        throw ValidationError((path.empty() ? std::string("document") : std::string(path)) + ": expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ValidationError(join(path, key) + ": missing field");
    }
    return *it;
}

double get_number(const nlohmann::json& obj, std::string_view key, std::string_view path)
{
    const auto& v = require(obj, key, path);
    if (!v.is_number()) {
        throw ValidationError(join(path, key) + ": expected a number");
    }
    double d = v.get<double>();
    if (!std::isfinite(d)) {
        throw ValidationError(join(path, key) + ": must be finite");
    }
    return d;
}

int get_int(const nlohmann::json& obj, std::string_view key, std::string_view path)
{
    const auto& v = require(obj, key, path);
    if (!v.is_number_integer()) {
        throw ValidationError(join(path, key) + ": expected an integer");
    }
    return v.get<int>();
}

std::uint64_t get_uint64(const nlohmann::json& obj, std::string_view key, std::string_view path)
{
    const auto& v = require(obj, key, path);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw ValidationError(join(path, key) + ": expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

std::string get_string(const nlohmann::json& obj, std::string_view key, std::string_view path)
{
    const auto& v = require(obj, key, path);
    if (!v.is_string()) {
        throw ValidationError(join(path, key) + ": expected a string");
    }
    return v.get<std::string>();
}

std::vector<double> get_number_array(const nlohmann::json& value, std::string_view path)
{
    if (!value.is_array()) {
        throw ValidationError(std::string(path) + ": expected an array of numbers");
    }
    std::vector<double> out;
    out.reserve(value.size());
    for (const auto& v : value) {
        if (!v.is_number()) {
            throw ValidationError(std::string(path) + ": expected an array of numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

nlohmann::json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw NotFoundError("file not found: " + path.string());
    }
    try {
        return nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(path.string() + ": invalid JSON (" + e.what() + ")");
    }
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& value)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << value.dump(2) << '\n';
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
}

} // namespace esid
