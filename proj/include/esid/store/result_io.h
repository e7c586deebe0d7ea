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
#ifndef ESID_STORE_RESULT_IO_H
#define ESID_STORE_RESULT_IO_H

#include "esid/ensemble/simulation_result.h"

#include <filesystem>
#include <string>
#include <vector>

namespace esid
{

inline constexpr std::string_view kMetadataFile = "metadata.json";
inline constexpr std::string_view kResultsFile  = "results.ndjson";
inline constexpr int kResultFormatVersion       = 1;

enum class ViolationKind
{
    MissingMetadata,
    Schema, ///< malformed JSON or fields of the wrong type
    LengthMismatch, ///< record or value block count differs from the declared dimensions
    MissingRecord,
    DuplicateRecord,
    InvalidValue, ///< negative or not finite
    NonMonotonePercentiles,
    InitialMismatch, ///< day-0 values differ between percentiles
};

struct Violation {
    ViolationKind kind;
    std::string message;
};

struct FormatReport {
    std::vector<Violation> violations;

    bool ok() const
    {
        return violations.empty();
    }
};

/**
 * Writes `metadata.json` and `results.ndjson` into `directory` (created if needed).
 * See docs/result_format.md for the exact layout.
 */
void save_result(const SimulationResult& result, const std::filesystem::path& directory);

/**
 * Reads a result directory. Throws FormatError for a missing metadata file, malformed or truncated
 * data, and ValidationError for values violating the percentile invariants.
 */
SimulationResult load_result(const std::filesystem::path& directory);

/// Checks a result directory and lists every violation instead of stopping at the first.
FormatReport validate_format(const std::filesystem::path& directory);

} // namespace esid

#endif // ESID_STORE_RESULT_IO_H
