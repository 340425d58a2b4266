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


#include "qfti/fock.hpp"

#include "qfti/error.hpp"
#include "qfti/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qfti {

// ---------------------------------------------------------------- OccupationState

OccupationState::OccupationState(std::vector<int> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw std::invalid_argument("OccupationState: needs at least one mode");
    for (int c : counts_) {
        if (c < 0) throw std::invalid_argument("OccupationState: negative photon count");
        total_ += c;
    }
}

OccupationState OccupationState::ones(std::size_t modes) { return OccupationState(std::vector<int>(modes, 1)); }

std::string OccupationState::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(counts_[i]);
    }
    out += ')';
    return out;
}

OccupationState OccupationState::parse(std::string_view text) {
    std::vector<int> counts;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '(' || text[i] == ')' ||
                                   text[i] == '\t'))
            ++i;
    };
    skip();
    while (i < text.size()) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
        if (ec != std::errc{}) {
            throw std::invalid_argument("OccupationState: cannot parse '" + std::string(text) + "'");
        }
        counts.push_back(value);
        i = static_cast<std::size_t>(ptr - text.data());
        skip();
    }
    return OccupationState(std::move(counts));
}

// ---------------------------------------------------------------- UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tol) : matrix_(std::move(m)), tol_(tol) {
    if (!matrix_.is_square() || matrix_.rows() == 0) {
        throw std::invalid_argument("UnitaryMatrix: needs a non-empty square matrix");
    }
    const double defect = unitarity_defect(matrix_);
    if (!(defect <= tol_)) {
        std::ostringstream msg;
        msg << "UnitaryMatrix: ||U^dag U - I||_max = " << defect << " exceeds tolerance " << tol_;
        throw std::invalid_argument(msg.str());
    }
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    return UnitaryMatrix(a.matrix_ * b.matrix_, std::max(a.tol_, b.tol_));
}

std::string ModelTag::to_string() const {
    switch (kind) {
    case ParticleModel::Quantum:
        return "quantum";
    case ParticleModel::Classical:
        return "classical";
    case ParticleModel::Mixture: {
        std::ostringstream s;
        s.precision(12);
        s << "mixture(" << mixing << ")";
        return s.str();
    }
    }
    return "unknown";
}

// ---------------------------------------------------------------- basis

std::size_t basis_size(int photons, std::size_t modes) {
    if (photons < 0 || modes == 0) return 0;
    // C(n + m - 1, m - 1) built as a running product of exact binomials.
    const unsigned __int128 cap = std::numeric_limits<std::size_t>::max();
    unsigned __int128 value = 1;
    const std::size_t r = modes - 1;
    for (std::size_t i = 1; i <= r; ++i) {
        value = value * (static_cast<unsigned __int128>(photons) + i) / i;
        if (value > cap) return std::numeric_limits<std::size_t>::max();
    }
    return static_cast<std::size_t>(value);
}

std::vector<OccupationState> enumerate_output_states(int photons, std::size_t modes,
                                                     const EnumerationOptions& options) {
    if (photons < 0) throw std::invalid_argument("enumerate_output_states: negative photon number");
    if (modes == 0) throw std::invalid_argument("enumerate_output_states: need at least one mode");
    const std::size_t count = basis_size(photons, modes);
    if (count > options.max_states) {
        throw ResourceLimitError("enumerate_output_states: basis of " + std::to_string(count) +
                                 " states exceeds cap " + std::to_string(options.max_states));
    }

    std::vector<OccupationState> out;
    out.reserve(count);
    std::vector<int> current(modes, 0);
    std::function<void(std::size_t, int)> fill = [&](std::size_t mode, int remaining) {
        if (mode + 1 == modes) {
            current[mode] = remaining;
            out.emplace_back(current);
            return;
        }
        for (int c = remaining; c >= 0; --c) {
            current[mode] = c;
            fill(mode + 1, remaining - c);
        }
    };
    fill(0, photons);
    return out;
}

// ---------------------------------------------------------------- OutputDistribution

OutputDistribution::OutputDistribution(ModelTag model, int photons, std::size_t modes,
                                       std::vector<OccupationState> states, std::vector<double> probabilities)
    : model_(model), photons_(photons), modes_(modes), states_(std::move(states)),
      probabilities_(std::move(probabilities)) {
    if (states_.size() != probabilities_.size()) {
        throw std::invalid_argument("OutputDistribution: states and probabilities differ in length");
    }
    for (const auto& s : states_) {
        if (s.modes() != modes_ || s.total() != photons_) {
            throw std::invalid_argument("OutputDistribution: state " + s.to_string() + " outside the (n, m) basis");
        }
    }
    for (double p : probabilities_) {
        if (!(p >= 0.0 && p <= 1.0 + 1e-9)) {
            throw std::invalid_argument("OutputDistribution: probability outside [0, 1]");
        }
    }
}

double OutputDistribution::probability(const OccupationState& state) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), state, std::greater<>{});
    if (it == states_.end() || *it != state) return 0.0;
    return probabilities_[static_cast<std::size_t>(it - states_.begin())];
}

double OutputDistribution::total() const {
    return std::accumulate(probabilities_.begin(), probabilities_.end(), 0.0);
}

bool OutputDistribution::same_space(const OutputDistribution& other) const {
    return photons_ == other.photons_ && modes_ == other.modes_ && states_ == other.states_;
}

// ---------------------------------------------------------------- evolution

namespace {

std::vector<std::size_t> expand_modes(const OccupationState& s) {
    std::vector<std::size_t> idx;
    idx.reserve(static_cast<std::size_t>(s.total()));
    for (std::size_t mode = 0; mode < s.modes(); ++mode)
        for (int c = 0; c < s[mode]; ++c) idx.push_back(mode);
    return idx;
}

double sqrt_factorial_product(const OccupationState& s) {
    double prod = 1.0;
    for (int c : s.counts())
        for (int f = 2; f <= c; ++f) prod *= f;
    return std::sqrt(prod);
}

double factorial_product(const OccupationState& s) {
    double prod = 1.0;
    for (int c : s.counts())
        for (int f = 2; f <= c; ++f) prod *= f;
    return prod;
}

void check_shapes(const UnitaryMatrix& u, const OccupationState& input, const char* who) {
    if (input.modes() != u.dim()) {
        throw std::invalid_argument(std::string(who) + ": input has " + std::to_string(input.modes()) +
                                    " modes, unitary has dimension " + std::to_string(u.dim()));
    }
}

ComplexMatrix submatrix(const ComplexMatrix& m, const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols) {
    ComplexMatrix sub(rows.size(), cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b) sub(a, b) = m(rows[a], cols[b]);
    return sub;
}

} // namespace

Complex transition_amplitude(const UnitaryMatrix& u, const OccupationState& input, const OccupationState& output,
                             const PermanentOptions& options) {
    check_shapes(u, input, "transition_amplitude");
    if (output.modes() != u.dim()) {
        throw std::invalid_argument("transition_amplitude: output has " + std::to_string(output.modes()) +
                                    " modes, unitary has dimension " + std::to_string(u.dim()));
    }
    if (input.total() != output.total()) {
        throw std::invalid_argument("transition_amplitude: photon number mismatch (" +
                                    std::to_string(input.total()) + " in, " + std::to_string(output.total()) +
                                    " out)");
    }
    const Complex perm = permanent(submatrix(u.matrix(), expand_modes(output), expand_modes(input)), options);
    return perm / (sqrt_factorial_product(input) * sqrt_factorial_product(output));
}

OutputDistribution quantum_distribution(const UnitaryMatrix& u, const OccupationState& input,
                                        const SimulationOptions& options) {
    check_shapes(u, input, "quantum_distribution");
    if (static_cast<std::size_t>(input.total()) > options.permanent.max_order) {
        throw ResourceLimitError("quantum_distribution: " + std::to_string(input.total()) +
                                 " photons exceed the permanent cap " + std::to_string(options.permanent.max_order));
    }
    auto states = enumerate_output_states(input.total(), u.dim(), options.enumeration);
    const auto in_cols = expand_modes(input);
    const double in_norm = sqrt_factorial_product(input);

    std::vector<double> probs(states.size(), 0.0);
    parallel_for(states.size(), [&](std::size_t i) {
        const auto& out = states[i];
        const Complex perm = permanent(submatrix(u.matrix(), expand_modes(out), in_cols), options.permanent);
        const double scale = in_norm * sqrt_factorial_product(out);
        probs[i] = std::norm(perm) / (scale * scale);
    });
    return OutputDistribution({ParticleModel::Quantum, 1.0}, input.total(), u.dim(), std::move(states),
                              std::move(probs));
}

OutputDistribution classical_distribution(const UnitaryMatrix& u, const OccupationState& input,
                                          const SimulationOptions& options) {
    check_shapes(u, input, "classical_distribution");
    if (static_cast<std::size_t>(input.total()) > options.permanent.max_order) {
        throw ResourceLimitError("classical_distribution: " + std::to_string(input.total()) +
                                 " photons exceed the permanent cap " + std::to_string(options.permanent.max_order));
    }
    auto states = enumerate_output_states(input.total(), u.dim(), options.enumeration);
    ComplexMatrix moduli(u.dim(), u.dim());
    for (std::size_t r = 0; r < u.dim(); ++r)
        for (std::size_t c = 0; c < u.dim(); ++c) moduli(r, c) = std::norm(u(r, c));
    const auto in_cols = expand_modes(input);

    std::vector<double> probs(states.size(), 0.0);
    parallel_for(states.size(), [&](std::size_t i) {
        const auto& out = states[i];
        const Complex perm = permanent(submatrix(moduli, expand_modes(out), in_cols), options.permanent);
        // Non-negative entries: real and ≥ 0 up to rounding.
        probs[i] = std::max(0.0, perm.real()) / factorial_product(out);
    });
    return OutputDistribution({ParticleModel::Classical, 0.0}, input.total(), u.dim(), std::move(states),
                              std::move(probs));
}

OutputDistribution mixture_distribution(const OutputDistribution& quantum, const OutputDistribution& classical,
                                        double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("mixture_distribution: weight must lie in [0, 1]");
    if (!quantum.same_space(classical)) {
        throw std::invalid_argument("mixture_distribution: distributions are over different bases");
    }
    // Exact endpoints: x = 1 and x = 0 reproduce the inputs bit for bit.
    std::vector<double> probs(quantum.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (x == 1.0) {
            probs[i] = quantum.probabilities()[i];
        } else if (x == 0.0) {
            probs[i] = classical.probabilities()[i];
        } else {
            probs[i] = x * quantum.probabilities()[i] + (1.0 - x) * classical.probabilities()[i];
        }
    }
    return OutputDistribution({ParticleModel::Mixture, x}, quantum.photons(), quantum.modes(), quantum.states(),
                              std::move(probs));
}

} // namespace qfti
