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

// Independent reference computations used only by the tests. Nothing here
// calls into the permanent or distribution code it is used to check.

#include "qfti/complex_matrix.hpp"
#include "qfti/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

namespace qfti::oracle {

/// Σ_σ Π_i M[i, σ(i)] over all k! permutations, accumulated in long double.
inline Complex naive_permanent(const ComplexMatrix& m) {
    using Wide = std::complex<long double>;
    const std::size_t k = m.rows();
    std::vector<std::size_t> sigma(k);
    std::iota(sigma.begin(), sigma.end(), 0);
    Wide total{};
    do {
        Wide prod{1.0L, 0.0L};
        for (std::size_t i = 0; i < k; ++i) prod *= Wide(m(i, sigma[i]));
        total += prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = {g(rng), g(rng)};
    return m;
}

/// Gaussian matrix orthonormalized column by column (modified Gram-Schmidt).
inline ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    ComplexMatrix m = random_matrix(n, n, rng);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t prev = 0; prev < c; ++prev) {
            Complex dot{};
            for (std::size_t r = 0; r < n; ++r) dot += std::conj(m(r, prev)) * m(r, c);
            for (std::size_t r = 0; r < n; ++r) m(r, c) -= dot * m(r, prev);
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < n; ++r) norm += std::norm(m(r, c));
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < n; ++r) m(r, c) /= norm;
    }
    return m;
}

/// Distinguishable photons routed independently: enumerate every assignment
/// of each photon to an output mode and accumulate Π |U[out, in]|².
inline std::map<std::vector<int>, double> independent_routing(const ComplexMatrix& u, const std::vector<int>& input) {
    std::vector<std::size_t> sources;
    for (std::size_t j = 0; j < input.size(); ++j)
        for (int c = 0; c < input[j]; ++c) sources.push_back(j);
    const std::size_t m = u.rows();
    std::map<std::vector<int>, double> out;
    std::vector<std::size_t> dest(sources.size(), 0);
    std::function<void(std::size_t, double)> walk = [&](std::size_t photon, double weight) {
        if (photon == sources.size()) {
            std::vector<int> occ(m, 0);
            for (std::size_t d : dest) ++occ[d];
            out[occ] += weight;
            return;
        }
        for (std::size_t d = 0; d < m; ++d) {
            dest[photon] = d;
            walk(photon + 1, weight * std::norm(u(d, sources[photon])));
        }
    };
    walk(0, 1.0);
    return out;
}

/// C(n, k) by Pascal's rule.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    std::vector<std::uint64_t> row(k + 1, 0);
    row[0] = 1;
    for (std::uint64_t i = 1; i <= n; ++i)
        for (std::uint64_t j = std::min(i, k); j > 0; --j) row[j] += row[j - 1];
    return row[k];
}

} // namespace qfti::oracle
