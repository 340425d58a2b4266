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

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace qfti::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

/// Inner loop of the Gray-code permanent sweep: adds `sign * delta` into the
/// running sums and returns the product of the updated sums. Both spans have
/// length k. `sign` is 0, ±1 or ±2; all kernels leave bit-identical sums.
using RowSumUpdateFn = std::complex<double> (*)(std::complex<double>* sums, const std::complex<double>* delta,
                                                std::size_t k, double sign) noexcept;

struct KernelTable {
    Isa isa;
    RowSumUpdateFn update_and_product;
};

/// Kernels compiled into this binary and runnable on this CPU, scalar first.
std::vector<Isa> available_isas();

/// Table for a specific ISA. Throws std::invalid_argument if it is not
/// available on this machine.
const KernelTable& kernels_for(Isa isa);

/// Table picked once per process: the widest available ISA, unless the
/// QFTI_KERNEL environment variable names another one ("scalar", "avx2").
const KernelTable& active_kernels();

namespace detail {
std::complex<double> update_and_product_scalar(std::complex<double>* row_sums,
                                               const std::complex<double>* column,
                                               std::size_t k, double sign) noexcept;
#if defined(QFTI_HAVE_AVX2)
std::complex<double> update_and_product_avx2(std::complex<double>* row_sums,
                                             const std::complex<double>* column,
                                             std::size_t k, double sign) noexcept;
#endif
} // namespace detail

} // namespace qfti::kernels
