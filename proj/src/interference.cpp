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


#include "qfti/interference.hpp"

#include "qfti/circuits.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qfti {

namespace {

void require_square_case(std::size_t n, const OccupationState& state, const char* who) {
    if (n == 0) throw std::invalid_argument(std::string(who) + ": n must be positive");
    if (state.modes() != n || static_cast<std::size_t>(state.total()) != n) {
        throw std::invalid_argument(std::string(who) + ": the zero-transmission law is stated for n photons in n modes; got " +
                                    std::to_string(state.total()) + " photons in " + std::to_string(state.modes()) +
                                    " modes with n = " + std::to_string(n));
    }
}

} // namespace

SuppressionVerdict suppression_predicate(std::size_t n, const OccupationState& state) {
    require_square_case(n, state, "suppression_predicate");
    std::size_t sum = 0;
    for (std::size_t j = 0; j < n; ++j) sum += j * static_cast<std::size_t>(state[j]);
    const int reduced = static_cast<int>(sum % n);
    return {state, reduced != 0, reduced};
}

bool amplitude_vanishes(std::size_t n, const OccupationState& state, double tol) {
    require_square_case(n, state, "amplitude_vanishes");
    return std::abs(transition_amplitude(fourier_matrix(n), OccupationState::ones(n), state)) < tol;
}

double violation_ratio(const OutputDistribution& dist, std::size_t n) {
    if (dist.modes() != n || static_cast<std::size_t>(dist.photons()) != n) {
        throw std::invalid_argument("violation_ratio: distribution must be over n photons in n modes (n = " +
                                    std::to_string(n) + ")");
    }
    double mass = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (suppression_predicate(n, dist.states()[i]).suppressed) mass += dist.probabilities()[i];
    }
    return mass;
}

double bhattacharyya_fidelity(const OutputDistribution& p, const OutputDistribution& q) {
    if (!p.same_space(q)) throw std::invalid_argument("bhattacharyya_fidelity: distributions are over different bases");
    double f = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) f += std::sqrt(p.probabilities()[i] * q.probabilities()[i]);
    return f;
}

WitnessReport pair_correlation_witness(const OutputDistribution& dist) {
    const int n = dist.photons();
    if (n < 2) throw std::invalid_argument("pair_correlation_witness: needs at least two photons");
    double correlator = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        const auto& s = dist.states()[k];
        // Σ_{i<j} s_i s_j = (N² − Σ s_i²) / 2
        long long sq = 0;
        for (int c : s.counts()) sq += static_cast<long long>(c) * c;
        const double pairs = 0.5 * static_cast<double>(static_cast<long long>(n) * n - sq);
        correlator += dist.probabilities()[k] * pairs;
    }
    WitnessReport r;
    r.g_bar = 2.0 * correlator / (static_cast<double>(n) * (n - 1));
    r.classical_bound = 1.0 - 1.0 / n;
    // Rounding margin: classical inputs sit on the bound.
    r.violated = r.g_bar < r.classical_bound - 1e-12;
    return r;
}

} // namespace qfti
