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

#include "pcmml/textio.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "pcmml/error.hpp"

namespace pcmml {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_u64(std::uint64_t v) {
    char buf[24];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out = "0x0000000000000000";
    for (int i = 0; i < 16; ++i)
        out[17 - i] = digits[(v >> (4 * i)) & 0xF];
    return out;
}

double parse_double(std::string_view field, std::string_view context) {
    double value = 0.0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size())
        throw DataError(std::string(context) + ": invalid number '" + std::string(field) + "'");
    return value;
}

std::uint64_t parse_u64(std::string_view field, std::string_view context) {
    std::uint64_t value = 0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size())
        throw DataError(std::string(context) + ": invalid integer '" + std::string(field) + "'");
    return value;
}

std::uint64_t parse_hex64(std::string_view field, std::string_view context) {
    if (field.size() != 18 || field[0] != '0' || field[1] != 'x')
        throw DataError(std::string(context) + ": expected 0x followed by 16 hex digits, got '" +
                        std::string(field) + "'");
    std::uint64_t value = 0;
    auto res = std::from_chars(field.data() + 2, field.data() + 18, value, 16);
    if (res.ec != std::errc() || res.ptr != field.data() + 18)
        throw DataError(std::string(context) + ": invalid hex field '" + std::string(field) + "'");
    return value;
}

std::vector<std::string_view> split_fields(std::string_view line, char delim) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open file: " + path.string());
    std::string content;
    in.seekg(0, std::ios::end);
    content.resize(static_cast<std::size_t>(in.tellg()));
    in.seekg(0, std::ios::beg);
    in.read(content.data(), static_cast<std::streamsize>(content.size()));
    if (!in)
        throw DataError("cannot read file: " + path.string());
    return content;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw DataError("cannot open file for writing: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw DataError("write failed: " + path.string());
}

std::vector<std::string_view> split_lines(std::string_view content) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < content.size()) {
        std::size_t pos = content.find('\n', start);
        if (pos == std::string_view::npos) {
            lines.push_back(content.substr(start));
            break;
        }
        lines.push_back(content.substr(start, pos - start));
        start = pos + 1;
    }
    return lines;
}

std::string file_digest(const std::filesystem::path& path) {
    std::string content = read_text_file(path);
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char c : content) {
        hash ^= c;
        hash *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return std::string("fnv1a64:") + buf;
}

} // namespace pcmml
