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
#ifndef ESID_ENSEMBLE_RANDOM_H
#define ESID_ENSEMBLE_RANDOM_H

#include <array>
#include <cstdint>

namespace esid
{

/**
 * Philox4x32-10 counter-based generator (Salmon et al., SC'11, "Random123").
 * Maps a 128 bit counter and a 64 bit key to 128 random bits; no hidden state.
 */
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key     = std::array<std::uint32_t, 2>;

    static Counter generate(Counter counter, Key key);
};

/**
 * Stream of uniform variates identified by (seed, stream).
 *
 * Block i of a stream is Philox4x32(counter = {lo(i), hi(i), lo(stream), hi(stream)},
 * key = {lo(seed), hi(seed)}). Each block yields two 64 bit words, word j = (x[2j+1] << 32) | x[2j].
 * A uniform double in [0, 1) is (word >> 11) * 2^-53. Reimplementing these three lines in any
 * language reproduces the stream bit for bit.
 */
class RandomStream
{
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream)
        : m_seed(seed)
        , m_stream(stream)
    {
    }

    std::uint64_t next_u64();

    /// Uniform in [0, 1).
    double next_uniform();

    /// Uniform in [min, max]; returns min exactly when min == max.
    double uniform(double min, double max);

private:
    std::uint64_t m_seed;
    std::uint64_t m_stream;
    std::uint64_t m_block = 0;
    std::array<std::uint64_t, 2> m_buffer{};
    int m_buffered = 0;
};

} // namespace esid

#endif // ESID_ENSEMBLE_RANDOM_H
