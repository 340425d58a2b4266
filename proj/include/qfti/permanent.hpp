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
#include "qfti/kernels.hpp"

#include <cstddef>

namespace qfti {

struct PermanentOptions {
    /// Largest accepted matrix order. The Gray-code sum costs O(2^(k-1) k), so 20 is ~1e7 flops.
    std::size_t max_order = 20;
};

/// Permanent of a square matrix via Glynn's formula with Gray-code sign
/// updates. Orders 0..2 use the closed forms (perm of the empty matrix is 1).
///
/// Throws std::invalid_argument for a non-square matrix and
/// ResourceLimitError when the order exceeds `options.max_order`.
Complex permanent(const ComplexMatrix& m, const PermanentOptions& options = {});

/// Same, with an explicit kernel table. Used by the kernel equivalence tests.
Complex permanent(const ComplexMatrix& m, const kernels::KernelTable& kernel,
                  const PermanentOptions& options = {});

} // namespace qfti
