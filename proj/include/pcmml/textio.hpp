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

#ifndef PCMML_TEXTIO_HPP
#define PCMML_TEXTIO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pcmml {

/// Shortest decimal representation that round-trips to the same double
/// (std::to_chars general format). All floating-point fields in the
/// project's CSV and model files use this form so that parse(format(x)) == x
/// bit for bit.
std::string format_double(double v);

std::string format_u64(std::uint64_t v);

/// 16 lowercase hex digits with a 0x prefix, the trace-file address/data form.
std::string format_hex64(std::uint64_t v);

/// Strict parsers: the whole field must be consumed. Throw DataError with
/// `context` in the message otherwise.
double parse_double(std::string_view field, std::string_view context);
std::uint64_t parse_u64(std::string_view field, std::string_view context);
/// Accepts 0x followed by exactly 16 hex digits, either case.
std::uint64_t parse_hex64(std::string_view field, std::string_view context);

/// Splits on a single-character delimiter; no quoting (none of the project's
/// formats need it).
std::vector<std::string_view> split_fields(std::string_view line, char delim);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// Splits file content into lines on '\n'; a trailing newline does not
/// produce an empty final line. "\r\n" is rejected by the strict field
/// parsers downstream rather than silently stripped.
std::vector<std::string_view> split_lines(std::string_view content);

/// FNV-1a 64-bit digest of a file's bytes, rendered as "fnv1a64:<16 hex>".
/// Used only for run manifests.
std::string file_digest(const std::filesystem::path& path);

} // namespace pcmml

#endif // PCMML_TEXTIO_HPP
