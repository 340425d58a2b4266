/**
 * Copyright 2026 The qfti Authors
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


#pragma once

#include <cstdint>

namespace qfti {

/// Counter-based generator: the i-th draw of stream (seed, stream) is
/// splitmix64(key + i·γ), where key mixes seed and stream id. Identical
/// (seed, stream) gives the identical sequence on every platform, and
/// distinct streams can be consumed in parallel without coordination.
///
/// Also a UniformRandomBitGenerator, but the samplers below do not rely on
/// std:: distributions, whose algorithms are implementation-defined.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Uniform on (0, 1).
    double uniform_open() noexcept;

    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Poisson variate with the given mean. Inversion for small means, Hörmann's
/// transformed rejection (PTRS) above 10.
std::uint64_t sample_poisson(CounterRng& rng, double mean);

} // namespace qfti
