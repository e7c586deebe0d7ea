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
#ifndef ESID_TESTS_MUTATIONS_H
#define ESID_TESTS_MUTATIONS_H

// Corruptions of a saved result directory, each breaking one format invariant.

#include "esid/ensemble/simulation_result.h"
#include "esid/store/result_io.h"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <sstream>
#include <string>
#include <vector>

namespace esid::testing
{

inline std::vector<std::string> read_lines(const std::filesystem::path& file)
{
    std::ifstream in(file, std::ios::binary);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        lines.push_back(line);
    }
    return lines;
}

inline void write_lines(const std::filesystem::path& file, const std::vector<std::string>& lines)
{
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    for (const auto& l : lines) {
        out << l << '\n';
    }
}

struct Mutation {
    std::string description;
};

/**
 * Applies one random invariant-breaking change to the results file of `directory`, which must hold
 * `original` as written by save_result. Records are ordered percentile, district, day.
 * With `cell_only` the change is confined to a single value; otherwise whole records may also be
 * dropped, duplicated or truncated.
 */
inline Mutation mutate_result(const std::filesystem::path& directory, const SimulationResult& original,
                              std::mt19937_64& rng, bool cell_only = false)
{
    using nlohmann::json;
    auto file  = directory / kResultsFile;
    auto lines = read_lines(file);

    const std::size_t districts = original.num_districts(), groups = original.num_groups();
    const int days              = original.num_days() + 1;
    const std::size_t p         = rng() % kNumPercentiles;
    const std::size_t d         = rng() % districts;
    const int day               = static_cast<int>(rng() % static_cast<std::size_t>(days));
    const std::size_t g         = rng() % groups;
    const auto c                = kAllCompartments[rng() % kNumCompartments];
    const std::size_t line      = (p * districts + d) * static_cast<std::size_t>(days) + static_cast<std::size_t>(day);

    if (line >= lines.size()) {
        throw std::runtime_error("mutate_result: " + file.string() + " has fewer records than the result");
    }
    auto record = json::parse(lines[line]);
    auto& cell  = record["values"][g][index_of(c)];
    const double v = original.at(p, d, day, g, c);
    std::ostringstream what;
    what << "percentile " << kPercentiles[p] << " district " << d << " day " << day << " group " << g
         << " compartment " << compartment_code(c) << ": ";

    switch (rng() % (cell_only ? 4 : 7)) {
    case 0:
        cell = -(v + 1.0);
        what << "negative";
        break;
    case 1:
        cell = "n/a";
        what << "non-numeric";
        break;
    case 2:
        cell = nullptr;
        what << "null";
        break;
    case 3:
        // push the cell across a neighbouring percentile
        if (p + 1 < kNumPercentiles) {
            cell = original.at(p + 1, d, day, g, c) + 1.0 + std::abs(v);
        }
        else {
            cell = original.at(p - 1, d, day, g, c) - 1.0 - std::abs(v);
        }
        what << "percentile order";
        break;
    case 4:
        record["values"][g].erase(index_of(c));
        what << "truncated block";
        break;
    case 5:
        lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(line));
        write_lines(file, lines);
        what << "record removed";
        return {what.str()};
    default:
        lines.insert(lines.begin() + static_cast<std::ptrdiff_t>(line), lines[line]);
        write_lines(file, lines);
        what << "record duplicated";
        return {what.str()};
    }
    lines[line] = record.dump();
    write_lines(file, lines);
    return {what.str()};
}

} // namespace esid::testing

#endif // ESID_TESTS_MUTATIONS_H
