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

#ifndef PCMML_SWEEP_HPP
#define PCMML_SWEEP_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pcmml/device_params.hpp"
#include "pcmml/sim_config.hpp"
#include "pcmml/trace.hpp"

namespace pcmml {

/// One dataset row: a (device parameters, trace) pair with its simulated
/// targets. Failed rows carry NaN targets and failed = true; they are
/// recorded rather than dropped so cardinality checks stay meaningful.
struct SweepRow {
    std::uint64_t row_id = 0;
    DeviceParams params;
    std::string trace_id;
    std::uint64_t reads = 0;
    std::uint64_t writes = 0;
    double total_write_energy_pj = 0.0;
    double total_energy_pj = 0.0;
    double total_write_latency_ns = 0.0;
    double total_latency_ns = 0.0;
    double endurance_per_bank = 0.0; ///< mean over banks
    bool failed = false;
};

/// The full 81-point grid, lexicographic in (set_voltage, set_pulse,
/// reset_voltage, reset_pulse) so row indexing is reproducible.
std::vector<DeviceParams> param_grid();

inline constexpr const char* kDatasetHeader =
    "row_id,set_v,set_t_ns,reset_v,reset_t_ns,trace_id,reads,writes,total_write_energy_pj,"
    "total_energy_pj,total_write_latency_ns,total_latency_ns,endurance_per_bank";

std::string serialize_dataset(const std::vector<SweepRow>& rows);
void write_dataset(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

/// Strict reader: malformed lines and failed (NaN) rows throw DataError.
std::vector<SweepRow> load_dataset(const std::filesystem::path& path);

struct SweepOptions {
    std::uint64_t base_seed = 0;
    unsigned jobs = 1; ///< parallel rows; output order is unaffected
};

struct SweepStats {
    std::size_t total = 0;
    std::size_t simulated = 0;
    std::size_t reused = 0; ///< rows taken from an existing output file
    std::size_t failed = 0;
};

/// Runs |grid| x |corpus| simulations and writes the dataset CSV. Rows are
/// emitted in (grid order x corpus order); row row_id = g * |corpus| + t.
///
/// The per-row simulation seed is derive_seed(base_seed, t): a function of
/// the row's corpus position only, because the seed feeds nothing but the
/// endurance baselines and endurance must agree across all parameter points
/// of one trace.
///
/// Resumable: rows already present and intact in `out_csv` are not
/// re-simulated; the file is rewritten complete and in order. A row whose
/// simulation throws is recorded as failed and the sweep continues.
SweepStats run_sweep(const std::vector<DeviceParams>& grid, const std::vector<CorpusEntry>& corpus,
                     const SimConfig& cfg, const SweepOptions& opt,
                     const std::filesystem::path& out_csv,
                     std::vector<SweepRow>* rows_out = nullptr);

} // namespace pcmml

#endif // PCMML_SWEEP_HPP
