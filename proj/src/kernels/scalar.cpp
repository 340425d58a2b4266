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


#include "qfti/kernels.hpp"

namespace qfti::kernels::detail {

// Reference kernel. Plain left-to-right product; the SIMD variants are
// checked against this one.
std::complex<double> update_and_product_scalar(std::complex<double>* row_sums,
                                               const std::complex<double>* column,
                                               std::size_t k, double sign) noexcept {
    double pr = 1.0;
    double pi = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double sr = row_sums[i].real() + sign * column[i].real();
        const double si = row_sums[i].imag() + sign * column[i].imag();
        row_sums[i] = {sr, si};
        const double nr = pr * sr - pi * si;
        pi = pr * si + pi * sr;
        pr = nr;
    }
    return {pr, pi};
}

} // namespace qfti::kernels::detail
