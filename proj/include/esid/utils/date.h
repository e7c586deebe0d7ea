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
#ifndef ESID_UTILS_DATE_H
#define ESID_UTILS_DATE_H

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace esid
{

using Date = std::chrono::year_month_day;

/**
 * Parse an ISO 8601 calendar date of the form YYYY-MM-DD.
 * @return the date, or nullopt if the text is malformed or names an impossible day.
 */
std::optional<Date> parse_date(std::string_view text);

/// Like parse_date but throws ValidationError mentioning `what`.
Date parse_date_or_throw(std::string_view text, std::string_view what);

std::string format_date(const Date& date);

Date add_days(const Date& date, int days);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

} // namespace esid

#endif // ESID_UTILS_DATE_H
