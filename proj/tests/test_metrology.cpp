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

#include "qfti/metrology.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace qfti;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> half_period_grid(std::size_t points) {
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) g[i] = kPi * static_cast<double>(i) / static_cast<double>(points);
    return g;
}

} // namespace

TEST_CASE("phase distributions") {
    CHECK(PhaseDistribution::linear(4).weights == std::vector<double>{0, 1, 2, 3});
    CHECK(PhaseDistribution::delta(3).weights == std::vector<double>{1, 0, 0});
    const auto nl = PhaseDistribution::normalized_linear(4);
    double sum = 0.0;
    for (double w : nl.weights) sum += w;
    CHECK(sum == doctest::Approx(1.0));
    CHECK(parse_phase_kind("normalized-linear") == PhaseKind::NormalizedLinear);
    CHECK(to_string(PhaseKind::Delta) == "delta");
    CHECK_THROWS_AS(parse_phase_kind("quadratic"), std::invalid_argument);
}

TEST_CASE("MZI is the identity at zero phase") {
    for (std::size_t n = 2; n <= 6; ++n) {
        for (auto f : {PhaseDistribution::linear(n), PhaseDistribution::delta(n)}) {
            CHECK(max_abs_diff(mzi_unitary(f, 0.0).matrix(), ComplexMatrix::identity(n)) < 1e-14);
            CHECK(std::abs(coincidence_probability(f, 0.0) - 1.0) < 1e-13);
        }
    }
}

TEST_CASE("two-mode delta fringe is cos^2") {
    const auto f = PhaseDistribution::delta(2);
    for (double phi : {0.1, 0.7, 1.3, 2.9}) {
        CHECK(std::abs(coincidence_probability(f, phi) - std::cos(phi) * std::cos(phi)) < 1e-14);
        const double p = coincidence_probability(f, phi);
        const double fi = fisher_information(p, coincidence_derivative(f, phi), 1.0);
        CHECK(std::abs(fi - 4.0) < 1e-10);
    }
}

TEST_CASE("analytic derivative matches finite differences") {
    for (std::size_t n = 2; n <= 4; ++n) {
        for (auto f : {PhaseDistribution::linear(n), PhaseDistribution::delta(n)}) {
            CAPTURE(n);
            CAPTURE(to_string(f.kind));
            double worst = 0.0;
            for (int i = 0; i < 1000; ++i) {
                const double phi = 2.0 * kPi * (i + 0.5) / 1000.0;
                worst = std::max(worst, std::abs(coincidence_derivative(f, phi) - coincidence_derivative_numeric(f, phi)));
            }
            CHECK(worst < 1e-6);
        }
    }
}

TEST_CASE("fringes are periodic") {
    for (std::size_t n = 2; n <= 5; ++n) {
        const auto lin = PhaseDistribution::linear(n);
        const auto nl = PhaseDistribution::normalized_linear(n);
        const double nl_period = kPi * static_cast<double>(n * (n - 1));
        for (double phi : {0.3, 1.1, 2.5}) {
            CHECK(std::abs(coincidence_probability(lin, phi + 2.0 * kPi) - coincidence_probability(lin, phi)) < 1e-12);
            CHECK(std::abs(coincidence_probability(nl, phi + nl_period) - coincidence_probability(nl, phi)) < 1e-11);
        }
    }
}

TEST_CASE("Fisher information input validation") {
    CHECK(fisher_information(0.5, 1.0, 1.0) == doctest::Approx(4.0));
    CHECK(fisher_information(0.5, 1.0, 0.5) == doctest::Approx(1.0 / (1.0 - 0.0) * 4.0 * 0.25));
    CHECK_THROWS_AS(fisher_information(1.2, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(fisher_information(0.5, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(fisher_information(1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(phase_uncertainty(0.0), std::invalid_argument);
}

TEST_CASE("ideal delta sensitivity and the numeric optimum") {
    CHECK(ideal_delta_sensitivity(2) == doctest::Approx(0.5));
    CHECK(ideal_delta_sensitivity(3) == doctest::Approx(std::sqrt(3.0 / 16.0)));
    CHECK(ideal_delta_sensitivity(4) == doctest::Approx(std::sqrt(4.0 / 24.0)));
    CHECK_THROWS_AS(ideal_delta_sensitivity(1), std::invalid_argument);
    for (std::size_t n = 2; n <= 6; ++n) {
        CAPTURE(n);
        const auto r = sensitivity_report(PhaseDistribution::delta(n), 1.0);
        CHECK(std::abs(r.delta_phi - ideal_delta_sensitivity(n)) < 5e-4);
        CHECK(r.hl <= r.delta_phi);
        CHECK(r.delta_phi < r.snl);
        CHECK(r.beats_snl);
    }
}

TEST_CASE("visibility thresholds") {
    const double expected[] = {0.708, 0.826, 0.923};
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto t = visibility_threshold(n);
        REQUIRE(t.has_value());
        CHECK(std::abs(*t - expected[n - 2]) < 2e-3);
    }
    // Two modes: FI = 4V² at best, so the threshold is exactly 1/√2.
    CHECK(std::abs(*visibility_threshold(2) - 1.0 / std::sqrt(2.0)) < 1e-6);
    // Thresholds grow with n.
    double prev = 0.0;
    for (std::size_t n = 2; n <= 6; ++n) {
        const auto t = visibility_threshold(n);
        REQUIRE(t.has_value());
        CHECK(*t > prev);
        CHECK(*t < 1.0);
        prev = *t;
    }
}

TEST_CASE("linear scheme scales as n^-1.5") {
    // Weights 0..n-1 amplify the phase, so 1/n is not a bound here.
    for (std::size_t n = 2; n <= 6; ++n) {
        const auto r = sensitivity_report(PhaseDistribution::linear(n), 1.0);
        const double scaled = r.delta_phi * std::pow(static_cast<double>(n), 1.5);
        CHECK(scaled > 1.0 / 2.0);
        CHECK(scaled < 2.0);
        CHECK(r.delta_phi < r.snl);
    }
}

TEST_CASE("linear optimum sits at a revival") {
    // Independent values: max FI = 16 (n = 3) and 40 (n = 4) at p -> 1.
    CHECK(std::abs(sensitivity_report(PhaseDistribution::linear(3), 1.0).delta_phi - 0.25) < 1e-5);
    CHECK(std::abs(sensitivity_report(PhaseDistribution::linear(4), 1.0).delta_phi - 1.0 / std::sqrt(40.0)) < 1e-5);
}

TEST_CASE("sensitivity reports at reduced visibility") {
    CHECK(sensitivity_report(PhaseDistribution::delta(3), 0.94).beats_snl);
    CHECK_FALSE(sensitivity_report(PhaseDistribution::delta(4), 0.90).beats_snl);
    const auto r = sensitivity_report(PhaseDistribution::delta(2), 1.0);
    CHECK(std::abs(r.delta_phi - 0.5) < 1e-6);
    CHECK(r.snl == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(r.hl == doctest::Approx(0.5));
}

TEST_CASE("metrology table") {
    const auto rows = metrology_table(5, 0.95);
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
        CHECK(row.delta_phi_ideal == doctest::Approx(ideal_delta_sensitivity(row.n)));
        CHECK(std::abs(row.delta_phi_optimum - row.delta_phi_ideal) < 5e-4);
        CHECK(row.delta_phi >= row.delta_phi_optimum);
        REQUIRE(row.threshold.has_value());
        CHECK(row.beats_snl == (0.95 > *row.threshold));
    }
}

TEST_CASE("oscillation counts over half a period") {
    const auto grid = half_period_grid(2000);
    auto osc = [&](PhaseDistribution f) { return count_oscillations(fringe_scan(f, grid)); };
    CHECK(osc(PhaseDistribution::linear(2)) == 1.0);
    CHECK(osc(PhaseDistribution::linear(3)) == 1.5);
    CHECK(osc(PhaseDistribution::delta(3)) == 1.5);
    CHECK(osc(PhaseDistribution::linear(4)) == 2.0);

    std::vector<FringePoint> flat{{0.0, 0.5}, {0.1, 0.5}, {0.2, 0.5}};
    CHECK(count_oscillations(flat) == 0.0);
}

TEST_CASE("delta fringe is steeper than normalized linear") {
    const auto grid = half_period_grid(400);
    for (std::size_t n = 3; n <= 5; ++n) {
        const auto cmp = compare_normalized_schemes(n, grid);
        CHECK(cmp.delta_steeper);
        CHECK(cmp.delta.curvature_at_origin > cmp.normalized_linear.curvature_at_origin);
        CHECK(cmp.delta.delta_phi_ideal < cmp.normalized_linear.delta_phi_ideal);
    }
}
