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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qfti {

enum class Polarization { H = 0, V = 1 };

/// Path ⊗ polarization labels over mode indices, interleaved
/// (H1, V1, H2, V2, ...). A labeling may be truncated (3 modes = H1, V1, H2).
class ModeLabeling {
public:
    struct Label {
        std::size_t path; ///< 0-indexed
        Polarization pol;
        friend bool operator==(const Label&, const Label&) = default;
    };

    /// Full interleaved labeling of `paths` paths (2·paths modes).
    static ModeLabeling interleaved(std::size_t paths);
    /// First `modes` entries of the interleaved order.
    static ModeLabeling truncated(std::size_t modes);

    std::size_t modes() const noexcept { return labels_.size(); }
    const Label& label(std::size_t mode) const { return labels_.at(mode); }
    std::optional<std::size_t> index(std::size_t path, Polarization pol) const;
    std::string describe(std::size_t mode) const;

private:
    std::vector<Label> labels_;
};

namespace element {

/// Two-mode beam splitter with intensity reflectivity r:
/// [[√r, √(1−r)], [√(1−r), −√r]] on (mode_a, mode_b).
struct Nbs {
    std::size_t mode_a;
    std::size_t mode_b;
    double reflectivity;
};

/// Polarization-dependent beam splitter between two paths. Each polarization
/// sees an Nbs-form matrix with its own reflectivity. When the V mode of one
/// path is absent from the labeling, the V channel must be decoupled
/// (reflectivity 1) and acts as +1 on the V mode that exists.
struct Pdbs {
    std::size_t path_a;
    std::size_t path_b;
    double reflectivity_h;
    double reflectivity_v;
};

/// 2×2 Jones matrix on the (H, V) modes of one path.
struct WavePlate {
    std::size_t path;
    std::array<std::array<Complex, 2>, 2> jones;
};

struct PhaseShift {
    std::size_t mode;
    double theta;
};

/// Sends input mode i to output mode sigma[i].
struct Permutation {
    std::vector<std::size_t> sigma;
};

/// Arbitrary unitary block on an ordered list of modes.
struct Block {
    std::vector<std::size_t> modes;
    ComplexMatrix matrix;
    std::string name;
};

} // namespace element

using CircuitElement = std::variant<element::Nbs, element::Pdbs, element::WavePlate, element::PhaseShift,
                                    element::Permutation, element::Block>;

/// Full-size matrix of one element. Identity outside the declared modes.
/// Throws std::invalid_argument for out-of-range modes, invalid parameters or
/// a non-unitary block.
UnitaryMatrix expand(const CircuitElement& e, const ModeLabeling& labeling);

std::string describe(const CircuitElement& e);

struct Circuit {
    ModeLabeling labeling;
    std::vector<CircuitElement> elements; ///< applied first to last

    std::size_t modes() const noexcept { return labeling.modes(); }
};

/// Ordered product E_last ··· E_first. Empty circuit gives the identity.
UnitaryMatrix compose(const Circuit& c);

/// F[j,k] = exp(+2πi·jk/n)/√n, 0-indexed.
UnitaryMatrix fourier_matrix(std::size_t n);

/// (1/√2)[[1, e^{iθ}], [1, −e^{iθ}]]
ComplexMatrix hadamard_phase_block(double theta);

/// Interleaved (H1,V1,...,Hd,Vd) → blocked (H1,...,Hd,V1,...,Vd) as a 0/1
/// matrix acting on column vectors.
UnitaryMatrix shuffle_permutation(std::size_t paths);
std::vector<std::size_t> shuffle_sigma(std::size_t paths);

/// Circuit over 2d interleaved modes composing to fourier_matrix(2d): one
/// non-polarizing F_d on each polarization, per-path H(kπ/d) wave plates, then
/// the output shuffle back to natural order.
Circuit butterfly_factorization(std::size_t paths);

/// Element-level bulk-optics realization for n ∈ {2, 3, 4}.
Circuit paper_circuit(std::size_t n);

struct FourierEquivalenceReport {
    bool equivalent = false;
    bool magnitudes_ok = false;
    bool distribution_ok = false;
    std::size_t modes = 0;
    /// Output relabeling σ with P_U(s) = P_F(σ·s) when one exists.
    std::optional<std::vector<std::size_t>> output_permutation;
    std::vector<std::string> failures;
};

/// True iff all |U_jk| = 1/√n (1e−6) and the one-photon-per-mode output
/// distribution of U matches that of F_n up to an output-mode permutation
/// (1e−9 per entry).
FourierEquivalenceReport is_fourier_equivalent(const UnitaryMatrix& u);

} // namespace qfti
