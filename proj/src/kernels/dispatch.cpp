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

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qfti::kernels {

namespace {

constexpr KernelTable kScalar{Isa::Scalar, &detail::update_and_product_scalar};
#if defined(QFTI_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2, &detail::update_and_product_avx2};
#endif

bool cpu_supports(Isa isa) {
    switch (isa) {
    case Isa::Scalar:
        return true;
    case Isa::Avx2:
#if defined(QFTI_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    }
    return false;
}

const KernelTable& select() {
    const std::vector<Isa> isas = available_isas();
    if (const char* env = std::getenv("QFTI_KERNEL"); env != nullptr && *env != '\0') {
        const std::string wanted(env);
        for (Isa isa : isas) {
            if (to_string(isa) == wanted) return kernels_for(isa);
        }
        // Unknown or unavailable request: fall back to the reference kernel.
        return kScalar;
    }
    return kernels_for(isas.back());
}

} // namespace

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
    case Isa::Scalar:
        return "scalar";
    case Isa::Avx2:
        return "avx2";
    }
    return "unknown";
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out{Isa::Scalar};
    if (cpu_supports(Isa::Avx2)) out.push_back(Isa::Avx2);
    return out;
}

const KernelTable& kernels_for(Isa isa) {
    if (!cpu_supports(isa)) {
        throw std::invalid_argument("kernel ISA not available: " + std::string(to_string(isa)));
    }
    switch (isa) {
    case Isa::Scalar:
        return kScalar;
    case Isa::Avx2:
#if defined(QFTI_HAVE_AVX2)
        return kAvx2;
#else
        break;
#endif
    }
    return kScalar;
}

const KernelTable& active_kernels() {
    static const KernelTable& table = select();
    return table;
}

} // namespace qfti::kernels
