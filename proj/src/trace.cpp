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

#include "pcmml/trace.hpp"

#include <utility>

#include "pcmml/error.hpp"
#include "pcmml/rng.hpp"
#include "pcmml/textio.hpp"

namespace pcmml {

namespace {

constexpr const char* kTraceHeader = "# pcm-trace v1";

// Sub-stream indices split off a trace seed; one stream per independent
// random quantity so the draw order is pinned.
enum TraceStream : std::uint64_t {
    kStreamOps = 0,
    kStreamAddresses = 1,
    kStreamData = 2,
    kStreamGaps = 3,
};

} // namespace

const char* ratio_class_name(RatioClass c) {
    switch (c) {
    case RatioClass::RgtW: return "rgtw";
    case RatioClass::ReqW: return "reqw";
    case RatioClass::RltW: return "rltw";
    }
    return "?";
}

RatioClass Trace::ratio_class() const {
    if (reads > writes)
        return RatioClass::RgtW;
    if (reads < writes)
        return RatioClass::RltW;
    return RatioClass::ReqW;
}

Trace generate_trace(std::uint64_t ratio_reads, std::uint64_t ratio_writes, std::uint64_t length,
                     std::uint64_t seed) {
    const std::uint64_t parts = ratio_reads + ratio_writes;
    if (parts == 0)
        throw DataError("generate_trace: ratio must have r + w > 0");
    if (length == 0 || length % parts != 0)
        throw DataError("generate_trace: length " + format_u64(length) +
                        " is not divisible by ratio total " + format_u64(parts));

    const std::uint64_t reads = length / parts * ratio_reads;
    const std::uint64_t writes = length / parts * ratio_writes;

    Trace trace;
    trace.reads = reads;
    trace.writes = writes;
    trace.records.resize(length);

    // Exact op counts, then a Fisher-Yates shuffle of the op sequence.
    std::vector<TraceOp> ops(length);
    for (std::uint64_t i = 0; i < length; ++i)
        ops[i] = i < reads ? TraceOp::Read : TraceOp::Write;
    SplitMix64 op_rng(derive_seed(seed, kStreamOps));
    for (std::uint64_t i = length - 1; i > 0; --i) {
        std::uint64_t j = op_rng.next_below(i + 1);
        std::swap(ops[i], ops[j]);
    }

    SplitMix64 addr_rng(derive_seed(seed, kStreamAddresses));
    SplitMix64 data_rng(derive_seed(seed, kStreamData));
    SplitMix64 gap_rng(derive_seed(seed, kStreamGaps));

    std::uint64_t cycle = 0;
    for (std::uint64_t i = 0; i < length; ++i) {
        cycle += kMinInterArrival + gap_rng.next_below(kMaxInterArrival - kMinInterArrival + 1);
        TraceRecord& rec = trace.records[i];
        rec.cycle = cycle;
        rec.op = ops[i];
        rec.address = addr_rng.next_below(kTraceAddressSpaceBytes / 8) * 8;
        rec.data = rec.op == TraceOp::Write ? data_rng.next() : 0;
    }
    return trace;
}

std::vector<CorpusEntry> generate_corpus(std::uint64_t base_seed, std::uint64_t length) {
    // Read-heavy ratio cycle; the write-heavy class mirrors it.
    static constexpr std::pair<std::uint64_t, std::uint64_t> kReadHeavy[] = {
        {9, 1}, {8, 2}, {7, 3}, {6, 4}};

    std::vector<CorpusEntry> corpus;
    corpus.reserve(3 * kTracesPerClass);

    auto add_class = [&](RatioClass cls) {
        for (std::size_t i = 0; i < kTracesPerClass; ++i) {
            CorpusEntry entry;
            auto [r, w] = kReadHeavy[i % 4];
            switch (cls) {
            case RatioClass::RgtW: entry.ratio_reads = r; entry.ratio_writes = w; break;
            case RatioClass::ReqW: entry.ratio_reads = 5; entry.ratio_writes = 5; break;
            case RatioClass::RltW: entry.ratio_reads = w; entry.ratio_writes = r; break;
            }
            std::string index = format_u64(i);
            entry.id = std::string(ratio_class_name(cls)) + "_" + (i < 10 ? "0" : "") + index;
            entry.seed = derive_seed(base_seed, corpus.size());
            entry.trace = generate_trace(entry.ratio_reads, entry.ratio_writes, length, entry.seed);
            corpus.push_back(std::move(entry));
        }
    };
    add_class(RatioClass::RgtW);
    add_class(RatioClass::ReqW);
    add_class(RatioClass::RltW);
    return corpus;
}

std::string serialize_trace(const Trace& trace) {
    std::string out;
    out.reserve(trace.records.size() * 48 + 16);
    out += kTraceHeader;
    out += '\n';
    for (const TraceRecord& rec : trace.records) {
        out += format_u64(rec.cycle);
        out += rec.op == TraceOp::Read ? " R " : " W ";
        out += format_hex64(rec.address);
        out += ' ';
        out += format_hex64(rec.data);
        out += '\n';
    }
    return out;
}

void write_trace_file(const Trace& trace, const std::filesystem::path& path) {
    write_text_file(path, serialize_trace(trace));
}

Trace parse_trace(std::string_view text, std::string_view origin) {
    Trace trace;
    std::size_t line_no = 0;
    bool first = true;
    std::uint64_t prev_cycle = 0;
    auto ctx = [&]() { return std::string(origin) + " line " + format_u64(line_no); };

    for (std::string_view line : split_lines(text)) {
        ++line_no;
        if (line.empty())
            continue;
        if (line[0] == '#') {
            if (line_no != 1)
                throw DataError(ctx() + ": header comment only allowed on the first line");
            continue;
        }
        auto fields = split_fields(line, ' ');
        if (fields.size() != 4)
            throw DataError(ctx() + ": expected 'CYCLE OP ADDRESS DATA'");

        TraceRecord rec;
        rec.cycle = parse_u64(fields[0], ctx());
        if (fields[1] == "R")
            rec.op = TraceOp::Read;
        else if (fields[1] == "W")
            rec.op = TraceOp::Write;
        else
            throw DataError(ctx() + ": unknown op '" + std::string(fields[1]) + "'");
        rec.address = parse_hex64(fields[2], ctx());
        rec.data = parse_hex64(fields[3], ctx());

        if (!first && rec.cycle < prev_cycle)
            throw DataError(ctx() + ": cycle " + format_u64(rec.cycle) +
                            " regresses below previous cycle " + format_u64(prev_cycle));
        first = false;
        prev_cycle = rec.cycle;

        if (rec.op == TraceOp::Read)
            ++trace.reads;
        else
            ++trace.writes;
        trace.records.push_back(rec);
    }
    return trace;
}

Trace parse_trace_file(const std::filesystem::path& path) {
    return parse_trace(read_text_file(path), path.string());
}

std::filesystem::path write_corpus(const std::vector<CorpusEntry>& corpus,
                                   const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::string manifest = kCorpusManifestHeader;
    manifest += '\n';
    for (const CorpusEntry& entry : corpus) {
        std::string file = entry.id + ".trace";
        write_trace_file(entry.trace, dir / file);
        manifest += file;
        manifest += ',';
        manifest += format_u64(entry.ratio_reads);
        manifest += ',';
        manifest += format_u64(entry.ratio_writes);
        manifest += ',';
        manifest += format_u64(entry.trace.reads);
        manifest += ',';
        manifest += format_u64(entry.trace.writes);
        manifest += ',';
        manifest += format_u64(entry.seed);
        manifest += '\n';
    }
    std::filesystem::path manifest_path = dir / "corpus.csv";
    write_text_file(manifest_path, manifest);
    return manifest_path;
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
    std::filesystem::path manifest_path = dir / "corpus.csv";
    std::string content = read_text_file(manifest_path);
    auto lines = split_lines(content);
    if (lines.empty() || lines[0] != kCorpusManifestHeader)
        throw DataError(manifest_path.string() + ": missing or unexpected manifest header");

    std::vector<CorpusEntry> corpus;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty())
            continue;
        std::string ctx = manifest_path.string() + " line " + format_u64(i + 1);
        auto fields = split_fields(lines[i], ',');
        if (fields.size() != 6)
            throw DataError(ctx + ": expected 6 fields");
        CorpusEntry entry;
        std::string file(fields[0]);
        entry.id = file.size() > 6 && file.ends_with(".trace") ? file.substr(0, file.size() - 6)
                                                               : file;
        entry.ratio_reads = parse_u64(fields[1], ctx);
        entry.ratio_writes = parse_u64(fields[2], ctx);
        entry.seed = parse_u64(fields[5], ctx);
        entry.trace = parse_trace_file(dir / file);
        if (entry.trace.reads != parse_u64(fields[3], ctx) ||
            entry.trace.writes != parse_u64(fields[4], ctx))
            throw DataError(ctx + ": trace file op counts disagree with manifest");
        corpus.push_back(std::move(entry));
    }
    if (corpus.empty())
        throw DataError(manifest_path.string() + ": empty corpus");
    return corpus;
}

} // namespace pcmml
