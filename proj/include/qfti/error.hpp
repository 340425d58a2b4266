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

#include <stdexcept>
#include <string>

namespace qfti {

/// Raised when a request would exceed a configured size cap (basis size,
/// permanent order). Distinct from std::invalid_argument so callers can tell
/// "too big" from "malformed".
class ResourceLimitError : public std::length_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::length_error(what) {}
};

} // namespace qfti
