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

#include "qfti/fock.hpp"

#include <cstddef>

namespace qfti {

/// Zero-transmission verdict for input (1,...,1) into F_n.
struct SuppressionVerdict {
    OccupationState state;
    bool suppressed = false;
    /// Σ_j j·s_j mod n, 0-indexed modes.
    int weighted_sum = 0;
};

/// Arithmetic zero-transmission law: suppressed iff Σ_j j·s_j ≢ 0 (mod n).
/// Defined only for n photons in n modes; anything else throws
/// std::invalid_argument.
SuppressionVerdict suppression_predicate(std::size_t n, const OccupationState& state);

/// Ground truth for the law: |⟨state| F_n |1,...,1⟩| < tol, by permanent.
bool amplitude_vanishes(std::size_t n, const OccupationState& state, double tol = 1e-10);

/// Probability mass `dist` puts on law-suppressed states; the expected value
/// of the event ratio N_s / N_t.
double violation_ratio(const OutputDistribution& dist, std::size_t n);

/// Σ_i √(p_i q_i). Throws std::invalid_argument if the bases differ.
double bhattacharyya_fidelity(const OutputDistribution& p, const OutputDistribution& q);

struct WitnessReport {
    double g_bar = 0.0;
    double classical_bound = 0.0;
    bool violated = false;
};

/// Ḡ_n = 2/(n(n−1)) Σ_{i<j} ⟨s_i s_j⟩ over the distribution, with n the
/// photon number; bound 1 − 1/n. The coincidence weight p_ij is read as the
/// expectation of the occupation product, which reproduces the classical
/// bounds exactly. `violated` needs Ḡ below the bound by more than 1e−12.
WitnessReport pair_correlation_witness(const OutputDistribution& dist);

} // namespace qfti
