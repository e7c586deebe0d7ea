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
#include "esid/store/registry.h"
#include "esid/utils/error.h"

#include <algorithm>
#include <set>
#include <tuple>

namespace esid
{

namespace
{

// Base letters for U+00C0..U+00FF; "" keeps the code point, "ss"/"ae"/... expand.
constexpr const char* kLatin1[64] = {
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i", // C0
    "d", "n", "o", "o", "o", "o", "o",  "",  "o", "u", "u", "u", "u", "y", "th", "ss", // D0
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i", // E0
    "d", "n", "o", "o", "o", "o", "o",  "",  "o", "u", "u", "u", "u", "y", "th", "y", // F0
};

// Base letters for U+0100..U+017F (Latin Extended-A), two code points per letter mostly.
constexpr const char* kLatinExtA[128] = {
    "a",  "a",  "a", "a", "a", "a", "c", "c", "c", "c", "c", "c", "c", "c", "d", "d", // 100
    "d",  "d",  "e", "e", "e", "e", "e", "e", "e", "e", "e", "e", "g", "g", "g", "g", // 110
    "g",  "g",  "g", "g", "h", "h", "h", "h", "i", "i", "i", "i", "i", "i", "i", "i", // 120
    "i",  "i",  "ij", "ij", "j", "j", "k", "k", "k", "l", "l", "l", "l", "l", "l", "l", // 130
    "l",  "l",  "l", "n", "n", "n", "n", "n", "n", "n", "n", "n", "o", "o", "o", "o", // 140
    "o",  "o",  "oe", "oe", "r", "r", "r", "r", "r", "r", "s", "s", "s", "s", "s", "s", // 150
    "s",  "s",  "t", "t", "t", "t", "t", "t", "u", "u", "u", "u", "u", "u", "u", "u", // 160
    "u",  "u",  "u", "u", "w", "w", "y", "y", "y", "z", "z", "z", "z", "z", "z", "s", // 170
};

/// Decodes one UTF-8 sequence at s[i]; returns the code point and advances i. Invalid bytes map to themselves.
char32_t decode(std::string_view s, std::size_t& i)
{
    auto byte = static_cast<unsigned char>(s[i]);
    int extra = 0;
    char32_t cp;
    if (byte < 0x80) {
        cp = byte;
    }
    else if ((byte & 0xE0) == 0xC0) {
        cp    = byte & 0x1F;
        extra = 1;
    }
    else if ((byte & 0xF0) == 0xE0) {
        cp    = byte & 0x0F;
        extra = 2;
    }
    else if ((byte & 0xF8) == 0xF0) {
        cp    = byte & 0x07;
        extra = 3;
    }
    else {
        ++i;
        return byte;
    }
    if (i + static_cast<std::size_t>(extra) >= s.size()) {
        ++i;
        return byte;
    }
    for (int k = 1; k <= extra; ++k) {
        auto cont = static_cast<unsigned char>(s[i + k]);
        if ((cont & 0xC0) != 0x80) {
            ++i;
            return byte;
        }
        cp = (cp << 6) | (cont & 0x3F);
    }
    i += static_cast<std::size_t>(extra) + 1;
    return cp;
}

std::string_view trim(std::string_view s)
{
    auto ws = [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r';
    };
    while (!s.empty() && ws(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && ws(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

std::string fold_for_search(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t start = i;
        char32_t cp       = decode(text, i);
        if (cp < 0x80) {
            out += static_cast<char>(cp >= 'A' && cp <= 'Z' ? cp - 'A' + 'a' : cp);
        }
        else if (cp >= 0xC0 && cp <= 0xFF && *kLatin1[cp - 0xC0]) {
            out += kLatin1[cp - 0xC0];
        }
        else if (cp >= 0x100 && cp <= 0x17F) {
            out += kLatinExtA[cp - 0x100];
        }
        else {
            out.append(text.substr(start, i - start));
        }
    }
    return out;
}

DistrictRegistry::DistrictRegistry(std::vector<District> districts)
    : m_districts(std::move(districts))
{
    std::set<std::string> ids;
    for (const auto& d : m_districts) {
        if (!ids.insert(d.id).second) {
            throw ValidationError("registry: duplicate district id '" + d.id + "'");
        }
        m_folded_names.push_back(fold_for_search(d.name));
    }
}

std::optional<std::size_t> DistrictRegistry::find(std::string_view id) const
{
    for (std::size_t i = 0; i < m_districts.size(); ++i) {
        if (m_districts[i].id == id) {
            return i;
        }
    }
    return std::nullopt;
}

std::vector<SearchMatch> DistrictRegistry::search(std::string_view query) const
{
    auto trimmed = trim(query);
    if (trimmed.empty()) {
        throw ValidationError("query too short");
    }
    const std::string folded = fold_for_search(trimmed);

    std::vector<std::tuple<int, std::string_view, std::string_view, std::size_t>> ranked;
    for (std::size_t i = 0; i < m_districts.size(); ++i) {
        const auto& d    = m_districts[i];
        const auto& name = m_folded_names[i];
        int rank         = -1;
        if (d.id == trimmed) {
            rank = 0;
        }
        else if (d.id.starts_with(trimmed) || name.starts_with(folded)) {
            rank = 1;
        }
        else if (name.find(folded) != std::string::npos) {
            rank = 2;
        }
        if (rank >= 0) {
            ranked.emplace_back(rank, name, d.id, i);
        }
    }
    std::sort(ranked.begin(), ranked.end());
    std::vector<SearchMatch> out;
    for (const auto& entry : ranked) {
        if (out.size() == kMaxSearchResults) {
            break;
        }
        const auto& d = m_districts[std::get<3>(entry)];
        out.push_back({d.id, d.name});
    }
    return out;
}

} // namespace esid
