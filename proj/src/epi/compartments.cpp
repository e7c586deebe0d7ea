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
#include "esid/epi/compartments.h"
#include "esid/utils/error.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

namespace esid
{

namespace
{

constexpr std::array<std::string_view, kNumCompartments> kCodes = {"S", "E", "C", "I", "H", "U", "R", "D"};
constexpr std::array<std::string_view, kNumCompartments> kNames = {
    "Susceptible",     "Exposed",             "Infectious non-symptomatic", "Infectious symptomatic",
    "Infected Severe", "Infectious Critical", "Recovered",                  "Dead",
};

bool iequals(std::string_view a, std::string_view b)
{
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

} // namespace

std::string_view compartment_code(Compartment c)
{
    return kCodes[index_of(c)];
}

std::string_view compartment_name(Compartment c)
{
    return kNames[index_of(c)];
}

std::optional<Compartment> parse_compartment(std::string_view text)
{
    for (auto c : kAllCompartments) {
        if (iequals(text, kCodes[index_of(c)]) || iequals(text, kNames[index_of(c)])) {
            return c;
        }
    }
    return std::nullopt;
}

AgeGroupSpec::AgeGroupSpec(std::vector<AgeGroup> groups)
    : m_groups(std::move(groups))
{
    if (m_groups.empty()) {
        throw ValidationError("age groups: at least one group is required");
    }
    std::set<std::string> seen;
    for (std::size_t i = 0; i < m_groups.size(); ++i) {
        const auto& g = m_groups[i];
        if (g.label.empty()) {
            throw ValidationError("age groups: empty label at position " + std::to_string(i));
        }
        if (!seen.insert(g.label).second) {
            throw ValidationError("age groups: duplicate label '" + g.label + "'");
        }
        if (!(g.min_age >= 0) || !(g.max_age > g.min_age)) {
            throw ValidationError("age groups: bounds of '" + g.label + "' must satisfy 0 <= min_age < max_age");
        }
        if (i > 0 && g.min_age < m_groups[i - 1].max_age) {
            throw ValidationError("age groups: '" + g.label + "' overlaps or precedes '" + m_groups[i - 1].label +
                                  "'");
        }
    }
}

std::vector<std::string> AgeGroupSpec::labels() const
{
    std::vector<std::string> out;
    out.reserve(m_groups.size());
    for (const auto& g : m_groups) {
        out.push_back(g.label);
    }
    return out;
}

std::optional<std::size_t> AgeGroupSpec::find(std::string_view label) const
{
    for (std::size_t i = 0; i < m_groups.size(); ++i) {
        if (m_groups[i].label == label) {
            return i;
        }
    }
    return std::nullopt;
}

double CompartmentTensor::group_total(std::size_t g) const
{
    auto block = group(g);
    return std::accumulate(block.begin(), block.end(), 0.0);
}

double CompartmentTensor::group_living(std::size_t g) const
{
    return group_total(g) - (*this)(g, Compartment::Dead);
}

double CompartmentTensor::total() const
{
    return std::accumulate(m_values.begin(), m_values.end(), 0.0);
}

void check_tensor(const CompartmentTensor& tensor, std::string_view what)
{
    for (std::size_t g = 0; g < tensor.num_groups(); ++g) {
        for (auto c : kAllCompartments) {
            double v = tensor(g, c);
            if (!std::isfinite(v) || v < 0) {
                throw ValidationError(std::string(what) + ": group " + std::to_string(g) + " compartment " +
                                      std::string(compartment_code(c)) + " must be finite and >= 0");
            }
        }
    }
}

} // namespace esid
