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
#include "qfti/metrology.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qfti {

struct CountRecord {
    double phi = 0.0;
    std::uint64_t counts = 0;
    /// Expected count at the fringe maximum used when synthesizing (A).
    double normalization = 0.0;
};

/// Expected counts (V(2p − 1) + 1)/2 · A.
double expected_counts(double p, double visibility, double amplitude);

/// One Poisson draw per grid point around the expected fringe. Point i uses
/// the independent stream (seed, i).
std::vector<CountRecord> synthesize_counts(const PhaseDistribution& f, std::span<const double> phi_grid,
                                           double amplitude, double visibility, std::uint64_t seed);

struct FitOptions {
    /// Weight each point by 1/max(counts, 1) instead of uniformly.
    bool inverse_variance_weights = false;
};

struct FringeFit {
    double amplitude = 0.0;     ///< A
    double visibility = 0.0;    ///< V clamped to [0, 1]
    double visibility_raw = 0.0;
    double sigma_visibility = 0.0;
    double sigma_amplitude = 0.0;
    double residual = 0.0;      ///< sum of squared residuals (weighted when weights are on)
    double c0 = 0.0;            ///< offset of Counts = c1·p + c0
    double c1 = 0.0;
    std::size_t points = 0;
    bool clamped = false;
};

/// Linear least squares of counts = c1·p(φ) + c0 with the theoretical p,
/// then A = c1 + 2c0 and V = c1/A; σ_V by first-order propagation of the fit
/// covariance. Needs ≥ 3 records at ≥ 3 distinct phases and a non-constant p.
FringeFit fit_fringe(std::span<const CountRecord> records, const PhaseDistribution& f, const FitOptions& options = {});

struct SensitivityEstimate {
    SensitivityReport report;
    double sigma_delta_phi = 0.0;
};

/// Δφ̂ = 1/√FI(V̂) at the optimal φ for V̂, and σ(Δφ̂) = |∂FI^{-1/2}/∂V|·σ_V.
SensitivityEstimate estimate_sensitivity(const FringeFit& fit, const PhaseDistribution& f,
                                         const OptimizerOptions& options = {});

struct SampledDistribution {
    OutputDistribution empirical;
    std::vector<std::uint64_t> counts; ///< aligned with empirical.states()
    std::uint64_t shots = 0;
};

/// Multinomial sample of `shots` outcomes from `dist` (seeded).
SampledDistribution sample_distribution(const OutputDistribution& dist, std::uint64_t shots, std::uint64_t seed);

/// ½ Σ |p_i − q_i| over a shared basis.
double total_variation_distance(const OutputDistribution& p, const OutputDistribution& q);

} // namespace qfti
