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

#include "qfti/complex_matrix.hpp"
#include "qfti/permanent.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qfti {

/// Photon counts per mode, the Fock basis label (s_1, ..., s_m).
class OccupationState {
public:
    OccupationState() = default;
    explicit OccupationState(std::vector<int> counts);
    OccupationState(std::initializer_list<int> counts) : OccupationState(std::vector<int>(counts)) {}

    /// (1, 1, ..., 1) on `modes` modes.
    static OccupationState ones(std::size_t modes);

    std::size_t modes() const noexcept { return counts_.size(); }
    int total() const noexcept { return total_; }
    int operator[](std::size_t mode) const { return counts_[mode]; }
    std::span<const int> counts() const noexcept { return counts_; }

    /// "(2,1,0)"
    std::string to_string() const;
    /// Parses "2,1,0", "(2,1,0)" or "2 1 0".
    static OccupationState parse(std::string_view text);

    friend bool operator==(const OccupationState&, const OccupationState&) = default;
    /// Lexicographic on the count vectors.
    friend auto operator<=>(const OccupationState& a, const OccupationState& b) { return a.counts_ <=> b.counts_; }

private:
    std::vector<int> counts_;
    int total_ = 0;
};

/// Square matrix that passed a unitarity check at construction.
class UnitaryMatrix {
public:
    static constexpr double kDefaultTolerance = 1e-10;

    /// Throws std::invalid_argument unless ‖M†M − I‖_max ≤ tol.
    explicit UnitaryMatrix(ComplexMatrix m, double tol = kDefaultTolerance);

    static UnitaryMatrix identity(std::size_t dim) { return UnitaryMatrix(ComplexMatrix::identity(dim)); }

    std::size_t dim() const noexcept { return matrix_.rows(); }
    double tolerance() const noexcept { return tol_; }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

    UnitaryMatrix adjoint() const { return UnitaryMatrix(matrix_.adjoint(), tol_); }
    friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

private:
    ComplexMatrix matrix_;
    double tol_;
};

enum class ParticleModel { Quantum, Classical, Mixture };

struct ModelTag {
    ParticleModel kind = ParticleModel::Quantum;
    /// Weight of the quantum part; meaningful only for Mixture.
    double mixing = 1.0;

    std::string to_string() const;
    friend bool operator==(const ModelTag&, const ModelTag&) = default;
};

struct EnumerationOptions {
    /// Largest accepted basis size C(n+m-1, m-1).
    std::size_t max_states = 10'000'000;
};

/// Number of compositions of n into m parts, saturating at SIZE_MAX.
std::size_t basis_size(int photons, std::size_t modes);

/// All compositions of `photons` into `modes` parts, lexicographically
/// descending: (n,0,...,0) first, (0,...,0,n) last.
std::vector<OccupationState> enumerate_output_states(int photons, std::size_t modes,
                                                     const EnumerationOptions& options = {});

/// Probabilities over the full output basis, in enumerate_output_states order.
class OutputDistribution {
public:
    OutputDistribution(ModelTag model, int photons, std::size_t modes, std::vector<OccupationState> states,
                       std::vector<double> probabilities);

    const ModelTag& model() const noexcept { return model_; }
    int photons() const noexcept { return photons_; }
    std::size_t modes() const noexcept { return modes_; }
    std::size_t size() const noexcept { return states_.size(); }

    const std::vector<OccupationState>& states() const noexcept { return states_; }
    const std::vector<double>& probabilities() const noexcept { return probabilities_; }

    /// Probability of `state`; 0 for states of a different shape.
    double probability(const OccupationState& state) const;
    double total() const;

    /// Same photon number, mode count and state order.
    bool same_space(const OutputDistribution& other) const;

private:
    ModelTag model_;
    int photons_;
    std::size_t modes_;
    std::vector<OccupationState> states_;
    std::vector<double> probabilities_;
};

struct SimulationOptions {
    EnumerationOptions enumeration{};
    PermanentOptions permanent{};
};

/// ⟨output| U |input⟩ = perm(U_{out,in}) / √(Π s_i! Π t_j!), where the
/// submatrix takes row i of U (output mode) t_i times and column j (input
/// mode) s_j times. Column j of U is the image of input mode j.
Complex transition_amplitude(const UnitaryMatrix& u, const OccupationState& input, const OccupationState& output,
                             const PermanentOptions& options = {});

/// Indistinguishable photons: |amplitude|² for every output state.
OutputDistribution quantum_distribution(const UnitaryMatrix& u, const OccupationState& input,
                                        const SimulationOptions& options = {});

/// Distinguishable photons: perm(|U|²_{out,in}) / Π_i s_i! for every output.
OutputDistribution classical_distribution(const UnitaryMatrix& u, const OccupationState& input,
                                          const SimulationOptions& options = {});

/// x·quantum + (1 − x)·classical over a shared basis. Phenomenological
/// partial-distinguishability model, not a Gram-matrix treatment.
OutputDistribution mixture_distribution(const OutputDistribution& quantum, const OutputDistribution& classical,
                                        double x);

} // namespace qfti
