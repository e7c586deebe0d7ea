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
#include "esid/ensemble/random.h"

#include <algorithm>

namespace esid
{

namespace
{

constexpr std::uint32_t kMul0   = 0xD2511F53;
constexpr std::uint32_t kMul1   = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0  = 0x9E3779B9;
constexpr std::uint32_t kWeyl1  = 0xBB67AE85;
constexpr int kRounds           = 10;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi                    = static_cast<std::uint32_t>(product >> 32);
    lo                    = static_cast<std::uint32_t>(product);
}

} // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key)
{
    for (int round = 0; round < kRounds; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

std::uint64_t RandomStream::next_u64()
{
    if (m_buffered == 0) {
        auto lo32 = [](std::uint64_t v) {
            return static_cast<std::uint32_t>(v);
        };
        auto hi32 = [](std::uint64_t v) {
            return static_cast<std::uint32_t>(v >> 32);
        };
        auto x = Philox4x32::generate({lo32(m_block), hi32(m_block), lo32(m_stream), hi32(m_stream)},
                                      {lo32(m_seed), hi32(m_seed)});
        ++m_block;
        m_buffer[0] = (static_cast<std::uint64_t>(x[1]) << 32) | x[0];
        m_buffer[1] = (static_cast<std::uint64_t>(x[3]) << 32) | x[2];
        m_buffered  = 2;
    }
    return m_buffer[2 - m_buffered--];
}

double RandomStream::next_uniform()
{
    return static_cast<double>(next_u64() >> 11) * 0x1p-53;
}

double RandomStream::uniform(double min, double max)
{
    double u = next_uniform();
    if (min == max) {
        return min;
    }
    return std::clamp(min + u * (max - min), min, max);
}

} // namespace esid
