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

#ifndef PCMML_TRACE_HPP
#define PCMML_TRACE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace pcmml {

enum class TraceOp : std::uint8_t { Read, Write };

struct TraceRecord {
    std::uint64_t cycle = 0;  ///< nondecreasing within a trace
    TraceOp op = TraceOp::Read;
    std::uint64_t address = 0;
    std::uint64_t data = 0;   ///< 64-bit write payload; 0 for reads

    bool operator==(const TraceRecord&) const = default;
};

enum class RatioClass { RgtW, ReqW, RltW };

const char* ratio_class_name(RatioClass c); ///< "rgtw" / "reqw" / "rltw"

struct Trace {
    std::vector<TraceRecord> records;
    std::uint64_t reads = 0;
    std::uint64_t writes = 0;

    RatioClass ratio_class() const;
    bool operator==(const Trace&) const = default;
};

/// Generated addresses are 8-byte-aligned and uniform over this many bytes
/// of physical space, so every bank field value occurs.
inline constexpr std::uint64_t kTraceAddressSpaceBytes = 1ULL << 30;

/// Inter-arrival gaps are uniform integers in [50, 100] cycles, mean 75, so
/// a 100,000-op trace spans roughly 7.5 million cycles.
inline constexpr std::uint64_t kMinInterArrival = 50;
inline constexpr std::uint64_t kMaxInterArrival = 100;

/// Generates a trace with exactly length*r/(r+w) reads and length*w/(r+w)
/// writes (counts are exact, not sampled), ordered by a seeded shuffle.
/// Throws DataError when r + w == 0 or length is not divisible by r + w.
Trace generate_trace(std::uint64_t ratio_reads, std::uint64_t ratio_writes, std::uint64_t length,
                     std::uint64_t seed);

struct CorpusEntry {
    std::string id;           ///< e.g. "rgtw_03"; trace file is "<id>.trace"
    std::uint64_t ratio_reads = 0;
    std::uint64_t ratio_writes = 0;
    std::uint64_t seed = 0;   ///< per-trace generation seed
    Trace trace;
};

inline constexpr std::size_t kTracesPerClass = 20;
inline constexpr std::uint64_t kDefaultTraceLength = 100000;

/// The 60-trace corpus: 20 read-heavy traces cycling through the ratios
/// 9:1, 8:2, 7:3, 6:4, then 20 balanced 5:5 traces, then 20 write-heavy
/// traces mirroring the read-heavy ratios. Per-trace seeds are derived from
/// base_seed by corpus position, so the corpus is byte-reproducible.
std::vector<CorpusEntry> generate_corpus(std::uint64_t base_seed,
                                         std::uint64_t length = kDefaultTraceLength);

/// Trace file format: optional "# pcm-trace v1" first line, then one record
/// per line as "CYCLE OP ADDRESS DATA" (single spaces, OP in {R, W},
/// ADDRESS/DATA as 0x + 16 hex digits). The writer always emits the header
/// line and lowercase hex.
std::string serialize_trace(const Trace& trace);
void write_trace_file(const Trace& trace, const std::filesystem::path& path);

/// Parse errors carry the 1-based line number; a cycle regression is a
/// validation error.
Trace parse_trace(std::string_view text, std::string_view origin = "trace");
Trace parse_trace_file(const std::filesystem::path& path);

/// Corpus manifest CSV: header `file,ratio_r,ratio_w,reads,writes,seed`.
inline constexpr const char* kCorpusManifestHeader = "file,ratio_r,ratio_w,reads,writes,seed";

/// Writes one .trace file per entry plus the corpus manifest `corpus.csv`
/// into `dir`; returns the manifest path.
std::filesystem::path write_corpus(const std::vector<CorpusEntry>& corpus,
                                   const std::filesystem::path& dir);

/// Loads a corpus directory via its corpus.csv manifest, in manifest order.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);

} // namespace pcmml

#endif // PCMML_TRACE_HPP
