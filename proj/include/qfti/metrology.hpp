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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qfti {

enum class PhaseKind { Linear, Delta, NormalizedLinear, NormalizedDelta, Custom };

std::string to_string(PhaseKind kind);
/// Accepts "linear", "delta", "normalized-linear", "normalized-delta".
PhaseKind parse_phase_kind(std::string_view text);

/// Per-mode phase multipliers: mode j picks up f_j·φ inside the MZI.
struct PhaseDistribution {
    PhaseKind kind = PhaseKind::Custom;
    std::vector<double> weights;

    std::size_t modes() const noexcept { return weights.size(); }

    /// f_j = j − 1 (1-indexed)
    static PhaseDistribution linear(std::size_t n);
    /// f_j = δ_{j,1}
    static PhaseDistribution delta(std::size_t n);
    /// Linear rescaled so Σ f_j = 1.
    static PhaseDistribution normalized_linear(std::size_t n);
    /// Delta already sums to one; tagged separately for reports.
    static PhaseDistribution normalized_delta(std::size_t n);
    static PhaseDistribution custom(std::vector<double> weights);
    static PhaseDistribution make(PhaseKind kind, std::size_t n);
};

/// F_n† · diag(e^{i f_j φ}) · F_n
UnitaryMatrix mzi_unitary(const PhaseDistribution& f, double phi);

/// perm of the MZI unitary, i.e. ⟨1..1| U(φ) |1..1⟩.
Complex coincidence_amplitude(const PhaseDistribution& f, double phi);

/// p(φ) = |⟨1..1| U(φ) |1..1⟩|²
double coincidence_probability(const PhaseDistribution& f, double phi);

/// Exact dp/dφ from d perm(U)/dφ = Σ_a perm(U with row a replaced by row a
/// of dU/dφ).
double coincidence_derivative(const PhaseDistribution& f, double phi);

/// Central differences with one Richardson step; cross-check for the above.
double coincidence_derivative_numeric(const PhaseDistribution& f, double phi, double step = 1e-6);

struct FringePoint {
    double phi = 0.0;
    double p = 0.0;
};

std::vector<FringePoint> fringe_scan(const PhaseDistribution& f, std::span<const double> phi_grid);

/// Oscillations of p over the grid counted as (local extrema)/2, with the
/// first grid point counted when it is a maximum or minimum of its
/// neighbourhood. For a grid over [0, π) this is the half-cycle count.
double count_oscillations(std::span<const FringePoint> fringe);

/// FI = 4V²(dp/dφ)² / (1 − V²(2p − 1)²). Throws std::invalid_argument when
/// p ∉ [0,1], V ∉ (0,1] or the denominator is not positive.
double fisher_information(double p, double dp_dphi, double visibility);

/// Cramér-Rao: 1/√FI.
double phase_uncertainty(double fisher_info);

/// √(n / (8(n − 1))), the ideal delta-scheme sensitivity.
double ideal_delta_sensitivity(std::size_t n);

struct OptimizerOptions {
    double grid_step = 1e-3;
    double refine_tolerance = 1e-8;
};

struct FisherOptimum {
    double phi = 0.0;
    double fisher_info = 0.0;
    double p = 0.0;
    double dp_dphi = 0.0;
};

/// Tabulated (p, dp/dφ) over one period of the fringe, reusable across
/// visibilities.
class FringeTable {
public:
    FringeTable(PhaseDistribution f, const OptimizerOptions& options = {});

    const PhaseDistribution& phases() const noexcept { return f_; }
    double period() const noexcept { return period_; }

    /// max_φ FI(φ; V): grid argmax, then golden-section refinement.
    FisherOptimum maximize(double visibility) const;

private:
    PhaseDistribution f_;
    OptimizerOptions options_;
    double period_;
    std::vector<double> phi_;
    std::vector<double> p_;
    std::vector<double> dp_;
};

struct SensitivityReport {
    std::size_t n = 0;
    double visibility = 1.0;
    double delta_phi = 0.0;
    double snl = 0.0;
    double hl = 0.0;
    bool beats_snl = false;
    double fisher_info = 0.0;
    double phi_star = 0.0;
};

SensitivityReport make_sensitivity_report(std::size_t n, double visibility, const FisherOptimum& optimum);

/// Best Δφ over φ for visibility V.
SensitivityReport sensitivity_report(const PhaseDistribution& f, double visibility,
                                     const OptimizerOptions& options = {});

/// Smallest V with max_φ FI > n, by bisection; nullopt when even V = 1 does
/// not beat the shot-noise limit.
std::optional<double> visibility_threshold(const PhaseDistribution& f, const OptimizerOptions& options = {});
std::optional<double> visibility_threshold(std::size_t n, const OptimizerOptions& options = {});

struct MetrologyRow {
    std::size_t n = 0;
    double delta_phi_ideal = 0.0;   ///< closed form
    double delta_phi_optimum = 0.0; ///< numerically maximized FI at V = 1
    double delta_phi = 0.0;         ///< at the requested V
    double phi_star = 0.0;
    double snl = 0.0;
    double hl = 0.0;
    std::optional<double> threshold;
    bool beats_snl = false;
    bool ideal_beats_snl = false;
};

/// Delta-scheme table for n = 2..max_n at visibility V.
std::vector<MetrologyRow> metrology_table(std::size_t max_n, double visibility, const OptimizerOptions& options = {});

struct SchemeDiagnostics {
    PhaseDistribution phases;
    std::vector<FringePoint> fringe;
    double curvature_at_origin = 0.0; ///< −p''(0)
    double max_slope_near_origin = 0.0;
    double delta_phi_ideal = 0.0;
};

struct NormalizedComparison {
    SchemeDiagnostics normalized_linear;
    SchemeDiagnostics delta;
    bool delta_steeper = false;
};

/// Normalized-linear versus delta fringes with slope diagnostics over
/// [0, slope_window].
NormalizedComparison compare_normalized_schemes(std::size_t n, std::span<const double> phi_grid,
                                                double slope_window = 0.5);

} // namespace qfti
