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


#include "qfti/permanent.hpp"

#include "qfti/error.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfti {

namespace {

// Neumaier-compensated complex sum.
class CompensatedSum {
public:
    void add(Complex x) noexcept {
        add_part(re_, re_c_, x.real());
        add_part(im_, im_c_, x.imag());
    }
    Complex value() const noexcept { return {re_ + re_c_, im_ + im_c_}; }

private:
    static void add_part(double& sum, double& comp, double x) noexcept {
        const double t = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

// Glynn: perm(M) = 2^{1-k} Σ_δ (Π_i δ_i) Π_j Σ_i δ_i M_ij over δ ∈ {±1}^k
// with δ_0 = +1. Gray code over δ_1..δ_{k-1}: one sign flip per step, column
// sums change by ±2·(row i), one O(k) kernel call per term.
Complex glynn(const ComplexMatrix& m, const kernels::KernelTable& kernel) {
    const std::size_t k = m.rows();
    std::vector<Complex> rows(m.data().begin(), m.data().end()); // row-major: row i contiguous

    std::vector<Complex> col_sums(k, Complex{});
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) col_sums[j] += rows[i * k + j];
    std::vector<bool> negative(k, false);

    CompensatedSum positive_terms;
    CompensatedSum negative_terms;
    positive_terms.add(kernel.update_and_product(col_sums.data(), rows.data(), k, 0.0));

    const std::uint64_t steps = std::uint64_t{1} << (k - 1);
    for (std::uint64_t g = 1; g < steps; ++g) {
        const auto i = static_cast<std::size_t>(std::countr_zero(g)) + 1;
        const bool to_negative = !negative[i];
        negative[i] = to_negative;
        const Complex prod =
            kernel.update_and_product(col_sums.data(), rows.data() + i * k, k, to_negative ? -2.0 : 2.0);
        // Gray code g has an odd number of negative signs iff g is odd.
        if (g & 1U) {
            negative_terms.add(prod);
        } else {
            positive_terms.add(prod);
        }
    }
    return (positive_terms.value() - negative_terms.value()) / static_cast<double>(steps);
}

} // namespace

Complex permanent(const ComplexMatrix& m, const kernels::KernelTable& kernel,
                  const PermanentOptions& options) {
    if (!m.is_square()) {
        throw std::invalid_argument("permanent: matrix must be square, got " + std::to_string(m.rows()) +
                                    "x" + std::to_string(m.cols()));
    }
    const std::size_t k = m.rows();
    if (k > options.max_order) {
        throw ResourceLimitError("permanent: order " + std::to_string(k) + " exceeds cap " +
                                 std::to_string(options.max_order));
    }
    switch (k) {
    case 0:
        return {1.0, 0.0};
    case 1:
        return m(0, 0);
    case 2:
        return m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0);
    default:
        return glynn(m, kernel);
    }
}

Complex permanent(const ComplexMatrix& m, const PermanentOptions& options) {
    return permanent(m, kernels::active_kernels(), options);
}

} // namespace qfti
