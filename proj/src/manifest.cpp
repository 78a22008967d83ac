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

#include "pcmml/manifest.hpp"

#include <ctime>

#include <json.hpp>

#include "pcmml/error.hpp"
#include "pcmml/textio.hpp"

namespace pcmml {

std::string utc_timestamp_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void record_file(std::vector<std::pair<std::string, std::string>>& list,
                 const std::filesystem::path& file, const std::filesystem::path& base) {
    std::error_code ec;
    std::filesystem::path rel = std::filesystem::relative(file, base, ec);
    if (ec || rel.empty()) rel = file;
    list.emplace_back(rel.generic_string(), file_digest(file));
}

std::string serialize_manifest(const RunManifest& manifest) {
    nlohmann::json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["subcommand"] = manifest.subcommand;
    j["seed"] = manifest.seed;
    nlohmann::json flags = nlohmann::json::object();
    for (const auto& [k, v] : manifest.flags) flags[k] = v;
    j["flags"] = flags;
    nlohmann::json inputs = nlohmann::json::object();
    for (const auto& [k, v] : manifest.inputs) inputs[k] = v;
    j["inputs"] = inputs;
    nlohmann::json outputs = nlohmann::json::object();
    for (const auto& [k, v] : manifest.outputs) outputs[k] = v;
    j["outputs"] = outputs;
    j["started_utc"] = manifest.started_utc;
    j["duration_seconds"] = manifest.duration_seconds;
    return j.dump(2) + "\n";
}

void write_run_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    write_text_file(path, serialize_manifest(manifest));
}

bool manifests_equivalent(const std::filesystem::path& a, const std::filesystem::path& b) {
    nlohmann::json ja;
    nlohmann::json jb;
    try {
        ja = nlohmann::json::parse(read_text_file(a));
        jb = nlohmann::json::parse(read_text_file(b));
    } catch (const std::exception& e) {
        throw DataError(std::string("manifest comparison: ") + e.what());
    }
    for (const char* volatile_key : {"started_utc", "duration_seconds"}) {
        ja.erase(volatile_key);
        jb.erase(volatile_key);
    }
    return ja == jb;
}

} // namespace pcmml
