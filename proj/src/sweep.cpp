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

#include "pcmml/sweep.hpp"

#include <atomic>
#include <cmath>
#include <optional>
#include <thread>

#include "pcmml/error.hpp"
#include "pcmml/rng.hpp"
#include "pcmml/simulator.hpp"
#include "pcmml/textio.hpp"

namespace pcmml {

std::vector<DeviceParams> param_grid() {
    std::vector<DeviceParams> grid;
    grid.reserve(81);
    for (double sv : kSetVoltageLevels)
        for (double st : kSetPulseLevelsNs)
            for (double rv : kResetVoltageLevels)
                for (double rt : kResetPulseLevelsNs)
                    grid.push_back(DeviceParams{sv, st, rv, rt});
    return grid;
}

namespace {

std::string serialize_row(const SweepRow& row) {
    std::string line;
    line += format_u64(row.row_id);
    line += ',';
    line += format_double(row.params.set_voltage);
    line += ',';
    line += format_double(row.params.set_pulse_ns);
    line += ',';
    line += format_double(row.params.reset_voltage);
    line += ',';
    line += format_double(row.params.reset_pulse_ns);
    line += ',';
    line += row.trace_id;
    line += ',';
    line += format_u64(row.reads);
    line += ',';
    line += format_u64(row.writes);
    line += ',';
    line += format_double(row.total_write_energy_pj);
    line += ',';
    line += format_double(row.total_energy_pj);
    line += ',';
    line += format_double(row.total_write_latency_ns);
    line += ',';
    line += format_double(row.total_latency_ns);
    line += ',';
    line += format_double(row.endurance_per_bank);
    return line;
}

SweepRow parse_row(std::string_view line, const std::string& ctx) {
    auto fields = split_fields(line, ',');
    if (fields.size() != 13)
        throw DataError(ctx + ": expected 13 fields, got " + format_u64(fields.size()));
    SweepRow row;
    row.row_id = parse_u64(fields[0], ctx);
    row.params.set_voltage = parse_double(fields[1], ctx);
    row.params.set_pulse_ns = parse_double(fields[2], ctx);
    row.params.reset_voltage = parse_double(fields[3], ctx);
    row.params.reset_pulse_ns = parse_double(fields[4], ctx);
    row.trace_id = std::string(fields[5]);
    row.reads = parse_u64(fields[6], ctx);
    row.writes = parse_u64(fields[7], ctx);
    row.total_write_energy_pj = parse_double(fields[8], ctx);
    row.total_energy_pj = parse_double(fields[9], ctx);
    row.total_write_latency_ns = parse_double(fields[10], ctx);
    row.total_latency_ns = parse_double(fields[11], ctx);
    row.endurance_per_bank = parse_double(fields[12], ctx);
    row.failed = !std::isfinite(row.total_write_energy_pj) ||
                 !std::isfinite(row.total_energy_pj) ||
                 !std::isfinite(row.total_write_latency_ns) ||
                 !std::isfinite(row.total_latency_ns) || !std::isfinite(row.endurance_per_bank);
    return row;
}

} // namespace

std::string serialize_dataset(const std::vector<SweepRow>& rows) {
    std::string out = kDatasetHeader;
    out += '\n';
    for (const SweepRow& row : rows) {
        out += serialize_row(row);
        out += '\n';
    }
    return out;
}

void write_dataset(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
    write_text_file(path, serialize_dataset(rows));
}

std::vector<SweepRow> load_dataset(const std::filesystem::path& path) {
    std::string content = read_text_file(path);
    auto lines = split_lines(content);
    if (lines.empty() || lines[0] != kDatasetHeader)
        throw DataError(path.string() + ": missing or unexpected dataset header");
    std::vector<SweepRow> rows;
    rows.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty())
            continue;
        std::string ctx = path.string() + " line " + format_u64(i + 1);
        SweepRow row = parse_row(lines[i], ctx);
        if (row.failed)
            throw DataError(ctx + ": row " + format_u64(row.row_id) +
                            " is marked failed (non-finite targets)");
        rows.push_back(std::move(row));
    }
    return rows;
}

SweepStats run_sweep(const std::vector<DeviceParams>& grid, const std::vector<CorpusEntry>& corpus,
                     const SimConfig& cfg, const SweepOptions& opt,
                     const std::filesystem::path& out_csv, std::vector<SweepRow>* rows_out) {
    if (grid.empty() || corpus.empty())
        throw DataError("run_sweep: grid and corpus must be non-empty");
    cfg.validate();

    const std::size_t total = grid.size() * corpus.size();
    SweepStats stats;
    stats.total = total;

    std::vector<SweepRow> rows(total);
    std::vector<bool> have(total, false);

    // Resume pass: accept rows from an existing output file when they are
    // intact and describe the same (params, trace) pair we would produce.
    if (std::filesystem::exists(out_csv)) {
        const std::string existing = read_text_file(out_csv);
        const auto lines = split_lines(existing);
        if (!lines.empty() && lines[0] == kDatasetHeader) {
            for (std::size_t i = 1; i < lines.size(); ++i) {
                if (lines[i].empty())
                    continue;
                std::optional<SweepRow> parsed;
                try {
                    parsed = parse_row(lines[i], "resume");
                } catch (const DataError&) {
                    continue; // damaged line: re-simulate that row
                }
                if (parsed->failed || parsed->row_id >= total)
                    continue;
                std::size_t idx = parsed->row_id;
                const DeviceParams& expect_params = grid[idx / corpus.size()];
                const CorpusEntry& expect_entry = corpus[idx % corpus.size()];
                if (parsed->params == expect_params && parsed->trace_id == expect_entry.id &&
                    parsed->reads == expect_entry.trace.reads &&
                    parsed->writes == expect_entry.trace.writes) {
                    rows[idx] = std::move(*parsed);
                    have[idx] = true;
                }
            }
        }
    }

    std::vector<std::size_t> missing;
    for (std::size_t idx = 0; idx < total; ++idx)
        if (!have[idx])
            missing.push_back(idx);
    stats.reused = total - missing.size();
    stats.simulated = missing.size();

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> failures{0};
    auto worker = [&]() {
        while (true) {
            std::size_t k = next.fetch_add(1);
            if (k >= missing.size())
                break;
            std::size_t idx = missing[k];
            std::size_t g = idx / corpus.size();
            std::size_t t = idx % corpus.size();
            const CorpusEntry& entry = corpus[t];

            SweepRow row;
            row.row_id = idx;
            row.params = grid[g];
            row.trace_id = entry.id;
            row.reads = entry.trace.reads;
            row.writes = entry.trace.writes;
            try {
                SimResult res =
                    simulate(entry.trace, grid[g], cfg, derive_seed(opt.base_seed, t));
                row.total_write_energy_pj = res.total_write_energy_pj;
                row.total_energy_pj = res.total_energy_pj;
                row.total_write_latency_ns = res.total_write_latency_ns;
                row.total_latency_ns = res.total_latency_ns;
                row.endurance_per_bank = res.endurance_mean;
            } catch (const std::exception&) {
                double nan = std::nan("");
                row.total_write_energy_pj = nan;
                row.total_energy_pj = nan;
                row.total_write_latency_ns = nan;
                row.total_latency_ns = nan;
                row.endurance_per_bank = nan;
                row.failed = true;
                failures.fetch_add(1);
            }
            rows[idx] = std::move(row);
        }
    };

    unsigned jobs = opt.jobs == 0 ? 1 : opt.jobs;
    if (jobs <= 1 || missing.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        unsigned n = std::min<std::size_t>(jobs, missing.size());
        pool.reserve(n);
        for (unsigned i = 0; i < n; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    stats.failed = failures.load();

    write_dataset(rows, out_csv);
    if (rows_out)
        *rows_out = std::move(rows);
    return stats;
}

} // namespace pcmml
