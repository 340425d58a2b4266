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
#include "qfti/fock.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qfti::io {

/// `re+imj` with shortest round-trip digits, e.g. "0.5-0.5j", "1+0j".
std::string format_complex(Complex c);
Complex parse_complex(std::string_view text);

/// Matrix text format: a `modes=<m>` line, then m lines of m
/// whitespace-separated `re+imj` entries. Parsing the output of
/// write_matrix reproduces every entry bit for bit.
std::string format_matrix(const ComplexMatrix& m);
ComplexMatrix parse_matrix(std::string_view text);

/// 12 significant digits, the CSV/JSON probability format.
std::string format_probability(double p);

/// RFC-4180 field quoting (only when the field needs it).
std::string csv_field(std::string_view field);

/// CSV with header `state,probability` and one row per basis state.
std::string distribution_csv(const OutputDistribution& dist);

/// Writes `contents` to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

} // namespace qfti::io
