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


#include "qfti/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qfti {

// ---------------------------------------------------------------- ModeLabeling

ModeLabeling ModeLabeling::interleaved(std::size_t paths) { return truncated(2 * paths); }

ModeLabeling ModeLabeling::truncated(std::size_t modes) {
    ModeLabeling out;
    out.labels_.reserve(modes);
    for (std::size_t i = 0; i < modes; ++i) out.labels_.push_back({i / 2, i % 2 == 0 ? Polarization::H : Polarization::V});
    return out;
}

std::optional<std::size_t> ModeLabeling::index(std::size_t path, Polarization pol) const {
    const std::size_t i = 2 * path + static_cast<std::size_t>(pol);
    if (i >= labels_.size()) return std::nullopt;
    return i;
}

std::string ModeLabeling::describe(std::size_t mode) const {
    const auto& l = label(mode);
    return std::string(l.pol == Polarization::H ? "H" : "V") + std::to_string(l.path + 1);
}

// ---------------------------------------------------------------- elements

namespace {

constexpr double kElementTol = 1e-10;

ComplexMatrix beam_splitter_block(double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("beam splitter reflectivity must lie in [0, 1]");
    const double t = std::sqrt(1.0 - r);
    const double s = std::sqrt(r);
    return ComplexMatrix{{s, t}, {t, -s}};
}

void check_mode(std::size_t mode, std::size_t modes, const char* who) {
    if (mode >= modes) {
        throw std::invalid_argument(std::string(who) + ": mode " + std::to_string(mode) + " out of range for " +
                                    std::to_string(modes) + " modes");
    }
}

// Embeds `block` on `targets` into an identity of size `modes`.
ComplexMatrix embed(const ComplexMatrix& block, const std::vector<std::size_t>& targets, std::size_t modes,
                    const char* who) {
    if (block.rows() != targets.size() || block.cols() != targets.size()) {
        throw std::invalid_argument(std::string(who) + ": block size does not match its mode list");
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
        check_mode(targets[i], modes, who);
        for (std::size_t j = 0; j < i; ++j) {
            if (targets[i] == targets[j]) throw std::invalid_argument(std::string(who) + ": repeated mode");
        }
    }
    ComplexMatrix full = ComplexMatrix::identity(modes);
    for (std::size_t a = 0; a < targets.size(); ++a) {
        for (std::size_t b = 0; b < targets.size(); ++b) full(targets[a], targets[b]) = block(a, b);
    }
    return full;
}

struct Expander {
    const ModeLabeling& labeling;

    ComplexMatrix operator()(const element::Nbs& e) const {
        return embed(beam_splitter_block(e.reflectivity), {e.mode_a, e.mode_b}, labeling.modes(), "nbs");
    }

    ComplexMatrix operator()(const element::Pdbs& e) const {
        const std::size_t m = labeling.modes();
        if (e.path_a == e.path_b) throw std::invalid_argument("pdbs: paths must differ");
        auto ha = labeling.index(e.path_a, Polarization::H);
        auto hb = labeling.index(e.path_b, Polarization::H);
        if (!ha || !hb) throw std::invalid_argument("pdbs: path has no H mode in this labeling");
        ComplexMatrix full = embed(beam_splitter_block(e.reflectivity_h), {*ha, *hb}, m, "pdbs");

        auto va = labeling.index(e.path_a, Polarization::V);
        auto vb = labeling.index(e.path_b, Polarization::V);
        const ComplexMatrix v_block = beam_splitter_block(e.reflectivity_v);
        if (va && vb) {
            full = embed(v_block, {*va, *vb}, m, "pdbs") * full;
        } else if (va || vb) {
            // One V mode missing: only a fully decoupled channel is physical.
            if (e.reflectivity_v != 1.0) {
                throw std::invalid_argument("pdbs: V channel must have reflectivity 1 when a V mode is absent");
            }
            // Perfect reflection keeps V in its own path with phase +1.
        }
        return full;
    }

    ComplexMatrix operator()(const element::WavePlate& e) const {
        auto h = labeling.index(e.path, Polarization::H);
        auto v = labeling.index(e.path, Polarization::V);
        if (!h || !v) throw std::invalid_argument("waveplate: path needs both H and V modes");
        ComplexMatrix jones{{e.jones[0][0], e.jones[0][1]}, {e.jones[1][0], e.jones[1][1]}};
        return embed(jones, {*h, *v}, labeling.modes(), "waveplate");
    }

    ComplexMatrix operator()(const element::PhaseShift& e) const {
        check_mode(e.mode, labeling.modes(), "phase");
        ComplexMatrix full = ComplexMatrix::identity(labeling.modes());
        full(e.mode, e.mode) = std::polar(1.0, e.theta);
        return full;
    }

    ComplexMatrix operator()(const element::Permutation& e) const {
        const std::size_t m = labeling.modes();
        if (e.sigma.size() != m) throw std::invalid_argument("permutation: size does not match mode count");
        std::vector<bool> hit(m, false);
        ComplexMatrix full(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            check_mode(e.sigma[i], m, "permutation");
            if (hit[e.sigma[i]]) throw std::invalid_argument("permutation: sigma is not a bijection");
            hit[e.sigma[i]] = true;
            full(e.sigma[i], i) = 1.0;
        }
        return full;
    }

    ComplexMatrix operator()(const element::Block& e) const {
        return embed(e.matrix, e.modes, labeling.modes(), "block");
    }
};

std::string format_complex(Complex c) {
    std::ostringstream s;
    s.precision(4);
    s << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
    return s.str();
}

} // namespace

UnitaryMatrix expand(const CircuitElement& e, const ModeLabeling& labeling) {
    return UnitaryMatrix(std::visit(Expander{labeling}, e), kElementTol);
}

std::string describe(const CircuitElement& e) {
    struct Describer {
        std::string operator()(const element::Nbs& x) const {
            std::ostringstream s;
            s << "nbs(" << x.mode_a << "," << x.mode_b << ", r=" << x.reflectivity << ")";
            return s.str();
        }
        std::string operator()(const element::Pdbs& x) const {
            std::ostringstream s;
            s << "pdbs(path " << x.path_a + 1 << ", path " << x.path_b + 1 << ", rH=" << x.reflectivity_h
              << ", rV=" << x.reflectivity_v << ")";
            return s.str();
        }
        std::string operator()(const element::WavePlate& x) const {
            return "waveplate(path " + std::to_string(x.path + 1) + ", [" + format_complex(x.jones[0][0]) + " " +
                   format_complex(x.jones[0][1]) + "; " + format_complex(x.jones[1][0]) + " " +
                   format_complex(x.jones[1][1]) + "])";
        }
        std::string operator()(const element::PhaseShift& x) const {
            std::ostringstream s;
            s << "phase(" << x.mode << ", " << x.theta << ")";
            return s.str();
        }
        std::string operator()(const element::Permutation& x) const {
            std::string s = "permutation(";
            for (std::size_t i = 0; i < x.sigma.size(); ++i) s += (i ? " " : "") + std::to_string(x.sigma[i]);
            return s + ")";
        }
        std::string operator()(const element::Block& x) const {
            std::string s = "block " + x.name + " on (";
            for (std::size_t i = 0; i < x.modes.size(); ++i) s += (i ? "," : "") + std::to_string(x.modes[i]);
            return s + ")";
        }
    };
    return std::visit(Describer{}, e);
}

UnitaryMatrix compose(const Circuit& c) {
    ComplexMatrix total = ComplexMatrix::identity(c.modes());
    for (const auto& e : c.elements) total = expand(e, c.labeling).matrix() * total;
    return UnitaryMatrix(std::move(total), kElementTol);
}

// ---------------------------------------------------------------- constructions

UnitaryMatrix fourier_matrix(std::size_t n) {
    if (n == 0) throw std::invalid_argument("fourier_matrix: n must be at least 1");
    ComplexMatrix f(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            // Reduce jk mod n before scaling so large products keep full precision.
            const auto e = static_cast<double>((j * k) % n);
            f(j, k) = std::polar(norm, 2.0 * std::numbers::pi * e / static_cast<double>(n));
        }
    }
    return UnitaryMatrix(std::move(f), 1e-12);
}

ComplexMatrix hadamard_phase_block(double theta) {
    const double s = std::numbers::sqrt2 / 2.0;
    const Complex e = std::polar(s, theta);
    return ComplexMatrix{{s, e}, {s, -e}};
}

std::vector<std::size_t> shuffle_sigma(std::size_t paths) {
    std::vector<std::size_t> sigma(2 * paths);
    for (std::size_t p = 0; p < paths; ++p) {
        sigma[2 * p] = p;
        sigma[2 * p + 1] = paths + p;
    }
    return sigma;
}

UnitaryMatrix shuffle_permutation(std::size_t paths) {
    if (paths == 0) throw std::invalid_argument("shuffle_permutation: need at least one path");
    return expand(element::Permutation{shuffle_sigma(paths)}, ModeLabeling::interleaved(paths));
}

Circuit butterfly_factorization(std::size_t paths) {
    if (paths == 0) throw std::invalid_argument("butterfly_factorization: need at least one path");
    const std::size_t d = paths;
    Circuit c{ModeLabeling::interleaved(d), {}};
    const auto sigma = shuffle_sigma(d);
    std::vector<std::size_t> inverse(2 * d);
    for (std::size_t i = 0; i < 2 * d; ++i) inverse[sigma[i]] = i;

    const ComplexMatrix fd = fourier_matrix(d).matrix();
    std::vector<std::size_t> first(d);
    std::vector<std::size_t> second(d);
    std::iota(first.begin(), first.end(), 0);
    std::iota(second.begin(), second.end(), d);

    // Even/odd split: blocked order puts the H (even) inputs first.
    c.elements.emplace_back(element::Permutation{sigma});
    c.elements.emplace_back(element::Block{first, fd, "F" + std::to_string(d)});
    c.elements.emplace_back(element::Block{second, fd, "F" + std::to_string(d)});
    // Back to interleaved: butterfly pair (E_k, O_k) on path k.
    c.elements.emplace_back(element::Permutation{inverse});
    for (std::size_t k = 0; k < d; ++k) {
        const double theta = std::numbers::pi * static_cast<double>(k) / static_cast<double>(d);
        c.elements.emplace_back(
            element::Block{{2 * k, 2 * k + 1}, hadamard_phase_block(theta), "H(" + std::to_string(k) + "pi/" +
                                                                               std::to_string(d) + ")"});
    }
    // Pair k now holds outputs (k, k + d); relabel to natural order.
    c.elements.emplace_back(element::Permutation{sigma});
    return c;
}

namespace {

using Jones = std::array<std::array<Complex, 2>, 2>;

// Standard Jones matrices with the fast axis at `angle` from horizontal.
Jones half_wave_plate(double angle) {
    const double c = std::cos(2.0 * angle);
    const double s = std::sin(2.0 * angle);
    return {{{c, s}, {s, -c}}};
}

Jones quarter_wave_plate(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const Complex i{0.0, 1.0};
    const Complex g = std::polar(1.0, -std::numbers::pi / 4.0);
    return {{{g * (c * c + i * s * s), g * (1.0 - i) * s * c}, {g * (1.0 - i) * s * c, g * (s * s + i * c * c)}}};
}

ModeLabeling path_modes(std::size_t n) {
    // Two bare path modes, labeled as the H modes of paths 1 and 2 would be.
    return ModeLabeling::truncated(n);
}

} // namespace

Circuit paper_circuit(std::size_t n) {
    const double pi = std::numbers::pi;
    switch (n) {
    case 2: {
        // A single 50/50 NBS between two path modes.
        Circuit c{path_modes(2), {}};
        c.elements.emplace_back(element::Nbs{0, 1, 0.5});
        return c;
    }
    case 3: {
        // Modes (H1, V1, H2). QWP at 45° mixes H1/V1 with a quarter-wave
        // relative phase, the PDBS (rH = 1/3, rV = 1) couples H1 and H2,
        // and a HWP at 22.5° balances H1/V1.
        Circuit c{ModeLabeling::truncated(3), {}};
        c.elements.emplace_back(element::WavePlate{0, quarter_wave_plate(pi / 4.0)});
        c.elements.emplace_back(element::Pdbs{0, 1, 1.0 / 3.0, 1.0});
        c.elements.emplace_back(element::WavePlate{0, half_wave_plate(pi / 8.0)});
        return c;
    }
    case 4: {
        // Modes (H1, V1, H2, V2). One NBS on both polarizations, a HWP
        // (Hadamard) on path 1, QWP + HWP (HS up to a phase) on path 2,
        // then detectors assigned in natural QFT order.
        Circuit c{ModeLabeling::interleaved(2), {}};
        c.elements.emplace_back(element::Nbs{0, 2, 0.5});
        c.elements.emplace_back(element::Nbs{1, 3, 0.5});
        c.elements.emplace_back(element::WavePlate{0, half_wave_plate(pi / 8.0)});
        c.elements.emplace_back(element::WavePlate{1, quarter_wave_plate(0.0)});
        c.elements.emplace_back(element::WavePlate{1, half_wave_plate(pi / 8.0)});
        c.elements.emplace_back(element::Permutation{shuffle_sigma(2)});
        return c;
    }
    default:
        throw std::invalid_argument("paper_circuit: only n = 2, 3, 4 are available, got " + std::to_string(n));
    }
}

// ---------------------------------------------------------------- equivalence

FourierEquivalenceReport is_fourier_equivalent(const UnitaryMatrix& u) {
    constexpr double kMagnitudeTol = 1e-6;
    constexpr double kProbabilityTol = 1e-9;
    constexpr std::size_t kMaxListed = 16;
    constexpr std::size_t kMaxPermutationSearch = 8;

    FourierEquivalenceReport report;
    const std::size_t n = u.dim();
    report.modes = n;

    const double expected = 1.0 / std::sqrt(static_cast<double>(n));
    report.magnitudes_ok = true;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const double mag = std::abs(u(j, k));
            if (std::abs(mag - expected) > kMagnitudeTol) {
                report.magnitudes_ok = false;
                if (report.failures.size() < kMaxListed) {
                    std::ostringstream s;
                    s.precision(10);
                    s << "|U[" << j << "," << k << "]| = " << mag << ", expected " << expected;
                    report.failures.push_back(s.str());
                }
            }
        }
    }

    const auto ones = OccupationState::ones(n);
    const auto p_u = quantum_distribution(u, ones);
    const auto p_f = quantum_distribution(fourier_matrix(n), ones);

    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<int> relabeled(n);
    auto matches = [&](const std::vector<std::size_t>& perm, std::vector<std::string>* failures) {
        bool ok = true;
        for (std::size_t i = 0; i < p_u.size(); ++i) {
            const auto& s = p_u.states()[i];
            for (std::size_t m = 0; m < n; ++m) relabeled[perm[m]] = s[m];
            const double target = p_f.probability(OccupationState(relabeled));
            if (std::abs(p_u.probabilities()[i] - target) > kProbabilityTol) {
                ok = false;
                if (failures == nullptr) return false;
                if (failures->size() < kMaxListed) {
                    std::ostringstream msg;
                    msg.precision(12);
                    msg << "P" << s.to_string() << " = " << p_u.probabilities()[i] << ", Fourier value " << target;
                    failures->push_back(msg.str());
                }
            }
        }
        return ok;
    };

    if (n <= kMaxPermutationSearch) {
        do {
            if (matches(sigma, nullptr)) {
                report.distribution_ok = true;
                report.output_permutation = sigma;
                break;
            }
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    } else if (matches(sigma, nullptr)) {
        report.distribution_ok = true;
        report.output_permutation = sigma;
    }
    if (!report.distribution_ok) {
        std::iota(sigma.begin(), sigma.end(), 0);
        matches(sigma, &report.failures);
    }
    report.equivalent = report.magnitudes_ok && report.distribution_ok;
    return report;
}

} // namespace qfti
