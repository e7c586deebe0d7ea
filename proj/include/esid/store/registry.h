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
#ifndef ESID_STORE_REGISTRY_H
#define ESID_STORE_REGISTRY_H

#include "esid/graph/graph.h"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace esid
{

/// Maximum number of results returned by DistrictRegistry::search.
inline constexpr std::size_t kMaxSearchResults = 20;

/**
 * Lower-cases UTF-8 text and strips diacritics from Latin letters ("Köln" -> "koln", "ß" -> "ss").
 * Characters outside the Latin-1 and Latin Extended-A blocks are kept as they are.
 */
std::string fold_for_search(std::string_view text);

struct SearchMatch {
    std::string id;
    std::string name;

    bool operator==(const SearchMatch&) const = default;
};

class DistrictRegistry
{
public:
    DistrictRegistry() = default;
    explicit DistrictRegistry(std::vector<District> districts);

    bool contains(std::string_view id) const
    {
        return find(id).has_value();
    }
    std::optional<std::size_t> find(std::string_view id) const;
    const std::vector<District>& districts() const
    {
        return m_districts;
    }

    /**
     * Auto-complete lookup. Matches case- and diacritic-insensitive substrings of the name and
     * prefixes of the id. Ranking: exact id, then id or name prefixes, then other substrings;
     * ties ordered by name. Throws ValidationError("query too short") for a blank query.
     */
    std::vector<SearchMatch> search(std::string_view query) const;

private:
    std::vector<District> m_districts;
    std::vector<std::string> m_folded_names;
};

} // namespace esid

#endif // ESID_STORE_REGISTRY_H
