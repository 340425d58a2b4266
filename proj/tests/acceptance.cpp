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


// Acceptance suite: one PASS/FAIL line per primary criterion.
//
// Exit status is 0 when every criterion passes or fails only where it is
// listed in kKnownUnattainable; any other failure exits 1.

#include "oracles.hpp"
#include "qfti/circuits.hpp"
#include "qfti/emulator.hpp"
#include "qfti/interference.hpp"
#include "qfti/kernels.hpp"
#include "qfti/metrology.hpp"
#include "qfti/permanent.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace qfti;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [" << what << "]";
        }
    }
};

struct Criterion {
    std::string id;
    double time_limit_s; // 0: no limit
    std::function<void(Outcome&)> body;
};

// Criteria that are implemented as stated but cannot hold; see the README.
const std::set<std::string> kKnownUnattainable = {"suppression-law"};

void state_probabilities(Outcome& o) {
    struct Case {
        std::size_t n;
        std::vector<std::pair<OccupationState, double>> support;
    };
    const std::vector<Case> cases{
        {2, {{{2, 0}, 0.5}, {{0, 2}, 0.5}}},
        {3, {{{3, 0, 0}, 2.0 / 9}, {{0, 3, 0}, 2.0 / 9}, {{0, 0, 3}, 2.0 / 9}, {{1, 1, 1}, 1.0 / 3}}},
        {4,
         {{{4, 0, 0, 0}, 6.0 / 64},
          {{0, 4, 0, 0}, 6.0 / 64},
          {{0, 0, 4, 0}, 6.0 / 64},
          {{0, 0, 0, 4}, 6.0 / 64},
          {{2, 1, 0, 1}, 1.0 / 8},
          {{1, 2, 1, 0}, 1.0 / 8},
          {{0, 1, 2, 1}, 1.0 / 8},
          {{1, 0, 1, 2}, 1.0 / 8},
          {{2, 0, 2, 0}, 1.0 / 16},
          {{0, 2, 0, 2}, 1.0 / 16}}},
    };
    double worst = 0.0;
    for (const auto& c : cases) {
        const auto d = quantum_distribution(fourier_matrix(c.n), OccupationState::ones(c.n));
        for (std::size_t i = 0; i < d.size(); ++i) {
            double expected = 0.0;
            for (const auto& [s, p] : c.support)
                if (s == d.states()[i]) expected = p;
            worst = std::max(worst, std::abs(d.probabilities()[i] - expected));
        }
    }
    o.detail << "max |p - exact| = " << worst << " over n = 2, 3, 4";
    o.require(worst < 1e-10, "deviation >= 1e-10");
}

void table_one(Outcome& o) {
    const double printed[] = {0.500, 0.433, 0.408};
    double worst_printed = 0.0, worst_formula = 0.0, worst_limits = 0.0;
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto r = sensitivity_report(PhaseDistribution::delta(n), 1.0);
        worst_printed = std::max(worst_printed, std::abs(r.delta_phi - printed[n - 2]));
        worst_formula = std::max(worst_formula, std::abs(r.delta_phi - ideal_delta_sensitivity(n)));
        const double x = static_cast<double>(n);
        worst_limits = std::max({worst_limits, std::abs(r.snl - 1.0 / std::sqrt(x)), std::abs(r.hl - 1.0 / x)});
        o.detail << "n=" << n << " dphi=" << r.delta_phi << " snl=" << r.snl << " hl=" << r.hl << "; ";
    }
    o.detail << "max dev vs table " << worst_printed << ", vs formula " << worst_formula;
    o.require(worst_printed < 5e-4, "table value off by >= 5e-4");
    o.require(worst_formula < 5e-4, "formula vs optimum >= 5e-4");
    o.require(worst_limits == 0.0, "SNL/HL not exact");
}

void thresholds(Outcome& o) {
    const double printed[] = {0.708, 0.826, 0.923};
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto t = visibility_threshold(n);
        if (!t) {
            o.require(false, "no threshold for n=" + std::to_string(n));
            continue;
        }
        o.detail << "n=" << n << " V*=" << *t << "; ";
        o.require(std::abs(*t - printed[n - 2]) < 2e-3, "n=" + std::to_string(n) + " off by >= 2e-3");
    }
}

void violation_ratios(Outcome& o) {
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto c = classical_distribution(fourier_matrix(n), OccupationState::ones(n));
        const double v = violation_ratio(c, n);
        const double exact = 1.0 - 1.0 / static_cast<double>(n);
        o.detail << "n=" << n << " v=" << v << "; ";
        o.require(std::abs(v - exact) < 1e-12, "n=" + std::to_string(n));
    }
}

void witness(Outcome& o) {
    const double quantum[] = {0.0, 1.0 / 3.0, 0.5};
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto f = fourier_matrix(n);
        const auto ones = OccupationState::ones(n);
        const auto q = pair_correlation_witness(quantum_distribution(f, ones));
        const auto c = pair_correlation_witness(classical_distribution(f, ones));
        o.detail << "n=" << n << " G_q=" << q.g_bar << " G_c=" << c.g_bar << " bound=" << c.classical_bound << "; ";
        o.require(std::abs(q.g_bar - quantum[n - 2]) < 1e-12, "quantum n=" + std::to_string(n));
        o.require(std::abs(c.g_bar - c.classical_bound) < 1e-12, "classical n=" + std::to_string(n));
    }
}

void suppression_law(Outcome& o) {
    for (std::size_t n = 2; n <= 6; ++n) {
        std::size_t states = 0, missed = 0, wrong = 0;
        std::string example;
        for (const auto& s : enumerate_output_states(static_cast<int>(n), n)) {
            ++states;
            const bool law = suppression_predicate(n, s).suppressed;
            const bool zero = amplitude_vanishes(n, s, 1e-10);
            if (zero && !law) {
                ++missed;
                if (example.empty()) example = s.to_string();
            }
            if (law && !zero) ++wrong;
        }
        o.detail << "n=" << n << ": " << states << " states, " << (states - missed - wrong) << " agree";
        if (missed > 0) o.detail << ", " << missed << " zero amplitudes not predicted (e.g. " << example << ")";
        if (wrong > 0) o.detail << ", " << wrong << " predicted zeros are nonzero";
        o.detail << "; ";
        o.require(missed == 0 && wrong == 0, "disagreement at n=" + std::to_string(n));
    }
}

void butterfly(Outcome& o) {
    for (std::size_t d : {1, 2, 3, 4, 8}) {
        const double diff = max_abs_diff(compose(butterfly_factorization(d)).matrix(), fourier_matrix(2 * d).matrix());
        o.detail << "d=" << d << " " << diff << "; ";
        o.require(diff < 1e-10, "d=" + std::to_string(d));
    }
}

void fringe_shapes(Outcome& o) {
    std::vector<double> grid(2000);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = std::numbers::pi * static_cast<double>(i) / 2000.0;
    struct Case {
        const char* name;
        PhaseDistribution f;
        double expected;
    };
    const std::vector<Case> cases{{"n=2 linear", PhaseDistribution::linear(2), 1.0},
                                  {"n=3 linear", PhaseDistribution::linear(3), 1.5},
                                  {"n=3 delta", PhaseDistribution::delta(3), 1.5},
                                  {"n=4 linear", PhaseDistribution::linear(4), 2.0}};
    for (const auto& c : cases) {
        const double osc = count_oscillations(fringe_scan(c.f, grid));
        o.detail << c.name << " " << osc << "; ";
        o.require(osc == c.expected, c.name);
    }
    o.detail << "(n=4 delta, informational: " << count_oscillations(fringe_scan(PhaseDistribution::delta(4), grid))
             << ")";
}

void permanent_oracle(Outcome& o) {
    std::mt19937_64 rng(20261017);
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    double worst = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 1; k <= 7; ++k) {
        for (int trial = 0; trial < 100; ++trial) {
            // Standard complex Gaussian entries, E|z|^2 = 1.
            ComplexMatrix m(k, k);
            for (auto& v : m.data()) v = {g(rng), g(rng)};
            const Complex ref = oracle::naive_permanent(m);
            for (auto isa : kernels::available_isas()) {
                worst = std::max(worst, std::abs(permanent(m, kernels::kernels_for(isa)) - ref));
            }
            ++count;
        }
    }
    o.detail << count << " matrices (100 per k = 1..7), " << kernels::available_isas().size()
             << " kernel(s), max |permanent - naive| = " << worst;
    o.require(worst < 1e-12, "deviation >= 1e-12");
}

void emulator_substitute(Outcome& o) {
    std::vector<double> grid50(50);
    for (std::size_t i = 0; i < 50; ++i) grid50[i] = 2.0 * std::numbers::pi * static_cast<double>(i) / 50.0;

    // Effective visibilities of the experiment, fitted back from synthetic data.
    for (auto [n, v] : {std::pair<std::size_t, double>{3, 0.94}, {4, 0.97}}) {
        const auto f = PhaseDistribution::delta(n);
        const auto fit = fit_fringe(synthesize_counts(f, grid50, 1e5, v, 2026), f);
        const auto est = estimate_sensitivity(fit, f);
        o.detail << "n=" << n << " V=" << v << " fit V=" << fit.visibility << "+-" << fit.sigma_visibility
                 << " dphi=" << est.report.delta_phi << "+-" << est.sigma_delta_phi << " snl=" << est.report.snl
                 << "; ";
        o.require(est.report.beats_snl, "n=" + std::to_string(n) + " does not beat SNL");
    }

    // Calibration: n = 3 delta, A = 1e5, 50 points, V = 0.94, 1000 seeds.
    const auto f3 = PhaseDistribution::delta(3);
    int within2 = 0, within3 = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto fit = fit_fringe(synthesize_counts(f3, grid50, 1e5, 0.94, seed), f3);
        const double z = std::abs(fit.visibility_raw - 0.94) / fit.sigma_visibility;
        within2 += z <= 2.0;
        within3 += z <= 3.0;
    }
    o.detail << "coverage 3sigma " << within3 / 10.0 << "%, 2sigma " << within2 / 10.0 << "%; ";
    o.require(within3 >= 990, "3-sigma coverage < 99%");
    o.require(within2 >= 930, "2-sigma coverage < 0.93");

    // Noiseless recovery.
    double worst = 0.0;
    const double a = 1e12;
    for (std::size_t n = 2; n <= 4; ++n) {
        for (auto f : {PhaseDistribution::linear(n), PhaseDistribution::delta(n)}) {
            for (double v : {0.0, 0.3, 0.7, 1.0}) {
                std::vector<CountRecord> recs;
                for (double phi : grid50) {
                    const double mu = expected_counts(coincidence_probability(f, phi), v, a);
                    recs.push_back({phi, static_cast<std::uint64_t>(std::llround(mu)), a});
                }
                const auto fit = fit_fringe(recs, f);
                worst = std::max({worst, std::abs(fit.visibility_raw - v), std::abs(fit.amplitude / a - 1.0)});
            }
        }
    }
    o.detail << "noiseless max dev " << worst << "; ";
    o.require(worst < 1e-9, "noiseless fit off by >= 1e-9");

    // Sampling convergence: TVD * sqrt(shots) stays within a factor 3.
    const auto c3 = classical_distribution(fourier_matrix(3), OccupationState::ones(3));
    std::vector<double> scaled;
    for (std::uint64_t shots : {100ULL, 1000ULL, 10000ULL, 100000ULL}) {
        double avg = 0.0;
        for (std::uint64_t s = 0; s < 20; ++s) avg += total_variation_distance(sample_distribution(c3, shots, s).empirical, c3);
        scaled.push_back(avg / 20.0 * std::sqrt(static_cast<double>(shots)));
    }
    const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    o.detail << "TVD*sqrt(shots) in [" << *lo << ", " << *hi << "]";
    o.require(*hi / *lo < 3.0, "TVD decay outside factor 3");
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"state-probabilities", 1.0, state_probabilities},
        {"table-sensitivity", 5.0, table_one},
        {"visibility-thresholds", 10.0, thresholds},
        {"classical-violation-ratio", 0.0, violation_ratios},
        {"witness-values", 0.0, witness},
        {"suppression-law", 30.0, suppression_law},
        {"butterfly-identity", 0.0, butterfly},
        {"fringe-oscillations", 0.0, fringe_shapes},
        {"permanent-oracle", 0.0, permanent_oracle},
        {"emulator-substitute", 0.0, emulator_substitute},
    };

    int unexpected = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.time_limit_s > 0.0) o.require(secs < c.time_limit_s, "runtime over " + std::to_string(c.time_limit_s) + " s");
        const bool known = kKnownUnattainable.count(c.id) > 0;
        std::printf("%s %-26s %.3fs %s%s\n", o.pass ? "PASS" : "FAIL", c.id.c_str(), secs, o.detail.str().c_str(),
                    !o.pass && known ? " (known unattainable)" : "");
        if (!o.pass && !known) ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}
