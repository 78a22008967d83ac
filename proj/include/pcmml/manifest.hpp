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

#ifndef PCMML_MANIFEST_HPP
#define PCMML_MANIFEST_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace pcmml {

inline constexpr const char* kToolName = "pcmml";
inline constexpr const char* kToolVersion = "1.0.0";

/// Per-stage provenance record written as JSON next to the stage outputs.
/// File paths are stored relative to the manifest's directory so two runs in
/// different output roots stay comparable; started_utc and duration_seconds
/// are the only fields allowed to differ between identical runs.
struct RunManifest {
    std::string subcommand;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> flags;   ///< name -> rendered value
    std::vector<std::pair<std::string, std::string>> inputs;  ///< path -> digest
    std::vector<std::pair<std::string, std::string>> outputs; ///< path -> digest
    std::string started_utc;
    double duration_seconds = 0.0;
};

std::string utc_timestamp_now();

/// Renders `file` relative to `base` and records its FNV-1a digest.
void record_file(std::vector<std::pair<std::string, std::string>>& list,
                 const std::filesystem::path& file, const std::filesystem::path& base);

std::string serialize_manifest(const RunManifest& manifest);
void write_run_manifest(const RunManifest& manifest, const std::filesystem::path& path);

/// True when the two manifest files agree on everything except started_utc
/// and duration_seconds.
bool manifests_equivalent(const std::filesystem::path& a, const std::filesystem::path& b);

} // namespace pcmml

#endif // PCMML_MANIFEST_HPP
