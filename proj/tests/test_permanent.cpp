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


#include "doctest.h"

#include "oracles.hpp"
#include "qfti/error.hpp"
#include "qfti/permanent.hpp"

#include <cmath>
#include <random>

using namespace qfti;

TEST_CASE("permanent of small closed forms") {
    CHECK(permanent(ComplexMatrix(0, 0)) == Complex{1.0, 0.0});

    const Complex a{1.5, -0.5}, b{0.25, 2.0}, c{-1.0, 0.75}, d{3.0, 0.1};
    const ComplexMatrix m{{a, b}, {c, d}};
    CHECK(std::abs(permanent(m) - (a * d + b * c)) < 1e-15);

    for (std::size_t k = 1; k <= 8; ++k) {
        ComplexMatrix ones(k, k);
        for (auto& v : ones.data()) v = 1.0;
        double fact = 1.0;
        for (std::size_t i = 2; i <= k; ++i) fact *= static_cast<double>(i);
        CHECK(std::abs(permanent(ones) - fact) < 1e-9 * fact);
    }
}

TEST_CASE("Gray-code sum matches the permutation-sum oracle") {
    std::mt19937_64 rng(20261017);
    for (std::size_t k = 1; k <= 7; ++k) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto m = oracle::random_matrix(k, k, rng);
            // Scale of the k! terms being summed.
            double amax = 0.0;
            for (const auto& v : m.data()) amax = std::max(amax, std::abs(v));
            double scale = 1.0;
            for (std::size_t i = 1; i <= k; ++i) scale *= static_cast<double>(i) * amax;
            CHECK(std::abs(permanent(m) - oracle::naive_permanent(m)) < 1e-14 * std::max(1.0, scale));
        }
    }
}

TEST_CASE("permanent is invariant under transpose and row swaps") {
    std::mt19937_64 rng(7);
    const auto m = oracle::random_matrix(6, 6, rng);
    const Complex p = permanent(m);
    CHECK(std::abs(permanent(m.transpose()) - p) < 1e-12);
    ComplexMatrix swapped = m;
    for (std::size_t c = 0; c < 6; ++c) std::swap(swapped(0, c), swapped(4, c));
    CHECK(std::abs(permanent(swapped) - p) < 1e-12);
}

TEST_CASE("permanent rejects non-square and oversized input") {
    CHECK_THROWS_AS(permanent(ComplexMatrix(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(permanent(ComplexMatrix(5, 5), PermanentOptions{4}), ResourceLimitError);
    CHECK_NOTHROW(permanent(ComplexMatrix(4, 4), PermanentOptions{4}));
}
