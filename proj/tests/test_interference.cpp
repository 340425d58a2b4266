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

#include "qfti/circuits.hpp"
#include "qfti/interference.hpp"

#include <cmath>

using namespace qfti;

TEST_CASE("suppression predicate examples") {
    CHECK(suppression_predicate(3, {2, 1, 0}).suppressed);
    CHECK(suppression_predicate(3, {2, 1, 0}).weighted_sum == 1);
    CHECK_FALSE(suppression_predicate(3, {1, 1, 1}).suppressed);
    CHECK_FALSE(suppression_predicate(3, {3, 0, 0}).suppressed);
    CHECK(suppression_predicate(2, {1, 1}).suppressed);
    CHECK_FALSE(suppression_predicate(4, {2, 0, 2, 0}).suppressed);
    CHECK(suppression_predicate(4, {1, 1, 2, 0}).suppressed);
    CHECK_THROWS_AS(suppression_predicate(3, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(suppression_predicate(3, {2, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(amplitude_vanishes(4, {1, 1, 1}), std::invalid_argument);
}

TEST_CASE("law agrees with the permanent for n <= 5") {
    for (std::size_t n = 2; n <= 5; ++n) {
        for (const auto& s : enumerate_output_states(static_cast<int>(n), n)) {
            CAPTURE(s.to_string());
            CHECK(suppression_predicate(n, s).suppressed == amplitude_vanishes(n, s));
        }
    }
}

TEST_CASE("n = 6: law is sufficient but misses twelve accidental zeros") {
    const std::size_t n = 6;
    int extra = 0;
    for (const auto& s : enumerate_output_states(6, n)) {
        const bool law = suppression_predicate(n, s).suppressed;
        const bool zero = amplitude_vanishes(n, s);
        if (law) CHECK(zero);
        if (zero && !law) ++extra;
    }
    CHECK(extra == 12);
    const OccupationState example{2, 1, 1, 0, 1, 1};
    CHECK_FALSE(suppression_predicate(n, example).suppressed);
    CHECK(amplitude_vanishes(n, example));
}

TEST_CASE("violation ratio") {
    for (std::size_t n = 2; n <= 6; ++n) {
        CAPTURE(n);
        const auto f = fourier_matrix(n);
        const auto ones = OccupationState::ones(n);
        const auto q = quantum_distribution(f, ones);
        const auto c = classical_distribution(f, ones);
        CHECK(violation_ratio(q, n) < 1e-12);
        // Uniform classical routing: the weighted sum is uniform mod n.
        CHECK(std::abs(violation_ratio(c, n) - (1.0 - 1.0 / static_cast<double>(n))) < 1e-12);
    }
    const auto q3 = quantum_distribution(fourier_matrix(3), OccupationState::ones(3));
    CHECK_THROWS_AS(violation_ratio(q3, 4), std::invalid_argument);
}

TEST_CASE("Bhattacharyya fidelity") {
    const auto f2 = fourier_matrix(2);
    const auto q = quantum_distribution(f2, {1, 1});
    const auto c = classical_distribution(f2, {1, 1});
    // √(½·¼) + 0 + √(½·¼)
    CHECK(std::abs(bhattacharyya_fidelity(q, c) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(bhattacharyya_fidelity(q, c) == bhattacharyya_fidelity(c, q));
    CHECK(std::abs(bhattacharyya_fidelity(q, q) - 1.0) < 1e-15);

    const auto id = quantum_distribution(UnitaryMatrix::identity(2), {1, 1});
    CHECK(bhattacharyya_fidelity(q, id) < 1e-15);

    const auto q3 = quantum_distribution(fourier_matrix(3), OccupationState::ones(3));
    CHECK_THROWS_AS(bhattacharyya_fidelity(q, q3), std::invalid_argument);
}

TEST_CASE("pair-correlation witness") {
    const double expected_quantum[] = {0.0, 1.0 / 3.0, 0.5};
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto q = quantum_distribution(fourier_matrix(n), OccupationState::ones(n));
        const auto w = pair_correlation_witness(q);
        CHECK(std::abs(w.g_bar - expected_quantum[n - 2]) < 1e-12);
        CHECK(w.classical_bound == doctest::Approx(1.0 - 1.0 / static_cast<double>(n)));
        CHECK(w.violated);
    }
    for (std::size_t n = 2; n <= 5; ++n) {
        const auto c = classical_distribution(fourier_matrix(n), OccupationState::ones(n));
        const auto w = pair_correlation_witness(c);
        CHECK(std::abs(w.g_bar - w.classical_bound) < 1e-12);
        CHECK_FALSE(w.violated);
    }
    const auto one = quantum_distribution(UnitaryMatrix::identity(2), {1, 0});
    CHECK_THROWS_AS(pair_correlation_witness(one), std::invalid_argument);
}
