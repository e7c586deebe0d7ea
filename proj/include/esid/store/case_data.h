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
#ifndef ESID_STORE_CASE_DATA_H
#define ESID_STORE_CASE_DATA_H

#include "esid/epi/compartments.h"
#include "esid/graph/graph.h"
#include "esid/utils/date.h"

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace esid
{

class DistrictRegistry;

/// Reported cumulative counts of one district and age group on one date.
struct CaseRecord {
    Date date{};
    std::string district;
    std::string group;
    double confirmed = 0;
    double deaths    = 0;
    double recovered = 0;

    double active() const
    {
        return confirmed - deaths - recovered;
    }

    bool operator==(const CaseRecord&) const = default;
};

inline constexpr std::string_view kCaseCsvHeader = "date,county_id,age_group,confirmed,deaths,recovered";

struct RowError {
    std::size_t line = 0; ///< 1-based, the header is line 1
    std::string reason;
};

struct IngestReport {
    std::size_t accepted   = 0;
    std::size_t rejected   = 0;
    std::size_t duplicates = 0; ///< rows replacing an earlier row with the same (date, district, group)
    std::vector<RowError> errors;
};

struct IngestResult {
    std::vector<CaseRecord> records; ///< sorted by district, date, then age group order
    IngestReport report;
};

/**
 * Parses surveillance case data. Invalid rows are rejected individually with their line number;
 * an input without any content, or with a wrong header, throws FormatError.
 */
IngestResult ingest_case_data(std::istream& csv, const DistrictRegistry& registry, const AgeGroupSpec& groups);

/// Writes records in the ingest format.
void write_case_csv(std::ostream& out, const std::vector<CaseRecord>& records);

struct CaseSeries {
    std::vector<Date> dates;
    std::vector<double> confirmed;
    std::vector<double> deaths;
    std::vector<double> recovered;
    std::vector<double> active;
};

/**
 * Ingested records keyed by (date, district, group). Merging the same records again is a no-op.
 */
class CaseDatabase
{
public:
    CaseDatabase() = default;
    explicit CaseDatabase(AgeGroupSpec groups)
        : m_groups(std::move(groups))
    {
    }

    void merge(const std::vector<CaseRecord>& records);

    /// All records in ingest order (district, date, group).
    std::vector<CaseRecord> records() const;

    std::size_t size() const
    {
        return m_records.size();
    }

    /// Records of one date, one per (district, group) present.
    std::vector<CaseRecord> on_date(const Date& date) const;

    /// Ascending by date. `group` is a group label or "total" (summed over groups per date).
    CaseSeries series(std::string_view district, std::string_view group) const;

    bool operator==(const CaseDatabase&) const = default;

private:
    struct Key {
        std::string district;
        std::chrono::sys_days date;
        std::size_t group;
        auto operator<=>(const Key&) const = default;
    };

    AgeGroupSpec m_groups;
    std::map<Key, CaseRecord> m_records;
};

/**
 * Initial compartments from reported counts on one date: D = deaths, R = recovered,
 * I = active cases, S = population - confirmed, everything else zero.
 * Every (district, group) of the graph needs exactly one record.
 */
std::vector<CompartmentTensor> initialize_from_cases(const std::vector<CaseRecord>& records, const GraphModel& graph,
                                                     const Date& date);

/// Copy of `graph` whose initial states come from initialize_from_cases.
GraphModel with_initial_from_cases(const GraphModel& graph, const std::vector<CaseRecord>& records, const Date& date);

} // namespace esid

#endif // ESID_STORE_CASE_DATA_H
