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

#include <immintrin.h>

namespace qfti::kernels::detail {

namespace {

// Two complex doubles per register, interleaved [re0, im0, re1, im1].
inline __m256d cmul(__m256d a, __m256d b) noexcept {
    const __m256d b_re = _mm256_movedup_pd(b);
    const __m256d b_im = _mm256_permute_pd(b, 0xF);
    const __m256d a_swapped = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_swapped, b_im));
}

inline std::complex<double> lane(__m256d v, int which) noexcept {
    alignas(32) double tmp[4];
    _mm256_store_pd(tmp, v);
    return {tmp[2 * which], tmp[2 * which + 1]};
}

} // namespace

std::complex<double> update_and_product_avx2(std::complex<double>* row_sums,
                                             const std::complex<double>* column,
                                             std::size_t k, double sign) noexcept {
    auto* rs = reinterpret_cast<double*>(row_sums);
    const auto* col = reinterpret_cast<const double*>(column);
    const __m256d s = _mm256_set1_pd(sign);
    const __m256d one = _mm256_setr_pd(1.0, 0.0, 1.0, 0.0);

    // Two independent product chains to hide the multiply latency.
    __m256d p0 = one;
    __m256d p1 = one;
    std::size_t i = 0;
    for (; i + 4 <= k; i += 4) {
        const __m256d r0 = _mm256_fmadd_pd(s, _mm256_loadu_pd(col + 2 * i), _mm256_loadu_pd(rs + 2 * i));
        const __m256d r1 =
            _mm256_fmadd_pd(s, _mm256_loadu_pd(col + 2 * i + 4), _mm256_loadu_pd(rs + 2 * i + 4));
        _mm256_storeu_pd(rs + 2 * i, r0);
        _mm256_storeu_pd(rs + 2 * i + 4, r1);
        p0 = cmul(p0, r0);
        p1 = cmul(p1, r1);
    }
    if (i + 2 <= k) {
        const __m256d r0 = _mm256_fmadd_pd(s, _mm256_loadu_pd(col + 2 * i), _mm256_loadu_pd(rs + 2 * i));
        _mm256_storeu_pd(rs + 2 * i, r0);
        p0 = cmul(p0, r0);
        i += 2;
    }
    const __m256d p = cmul(p0, p1);
    std::complex<double> result = lane(p, 0) * lane(p, 1);
    if (i < k) {
        const std::complex<double> last{rs[2 * i] + sign * col[2 * i], rs[2 * i + 1] + sign * col[2 * i + 1]};
        row_sums[i] = last;
        result *= last;
    }
    return result;
}

} // namespace qfti::kernels::detail
