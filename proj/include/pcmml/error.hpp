/*
 * Copyright 2026 The pcmml Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PCMML_ERROR_HPP
#define PCMML_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pcmml {

/// Error caused by user-supplied data or arguments: malformed files,
/// out-of-range values, invalid configuration. The CLI maps this to exit
/// code 2; anything else escaping a stage maps to exit code 3.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pcmml

#endif // PCMML_ERROR_HPP
