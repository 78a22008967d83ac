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

#include "pcmml/simulator.hpp"

#include <array>
#include <bit>
#include <cmath>

#include "pcmml/error.hpp"
#include "pcmml/rng.hpp"
#include "pcmml/textio.hpp"
#include "pcmml/thermal.hpp"

namespace pcmml {

double bit_pulse_energy(double voltage_v, double pulse_ns, double conductance_s) {
    if (voltage_v < 0.0)
        throw DataError("bit_pulse_energy: negative voltage " + format_double(voltage_v));
    if (pulse_ns < 0.0)
        throw DataError("bit_pulse_energy: negative pulse duration " + format_double(pulse_ns));
    if (!(conductance_s > 0.0))
        throw DataError("bit_pulse_energy: conductance must be positive, got " +
                        format_double(conductance_s));
    // W * ns = 1e-9 J = 1000 pJ
    return conductance_s * (voltage_v * voltage_v) * pulse_ns * 1000.0;
}

PulseEnergies compute_pulse_energies(const DeviceParams& params, const SimConfig& cfg) {
    PulseEnergies e;
    e.set_pj = bit_pulse_energy(params.set_voltage, params.set_pulse_ns, cfg.bit_conductance);
    e.reset_pj = bit_pulse_energy(params.reset_voltage, params.reset_pulse_ns, cfg.bit_conductance);
    if (cfg.thermal_enable)
        e.reset_pj *= thermal_energy_scale(cfg.ambient_k, cfg.thermal);
    return e;
}

double word_energy_for_popcount(unsigned set_bits, unsigned word_bits, const PulseEnergies& e) {
    return static_cast<double>(set_bits) * e.set_pj +
           static_cast<double>(word_bits - set_bits) * e.reset_pj;
}

double word_write_energy(std::uint64_t data, const DeviceParams& params, const SimConfig& cfg) {
    if (cfg.word_bits != 64)
        throw DataError("word_write_energy: WordBits must be 64, got " +
                        format_u64(cfg.word_bits));
    PulseEnergies e = compute_pulse_energies(params, cfg);
    return word_energy_for_popcount(static_cast<unsigned>(std::popcount(data)), 64, e);
}

double write_latency(const DeviceParams& params) {
    return params.set_pulse_ns + params.reset_pulse_ns;
}

std::uint32_t bank_of_address(std::uint64_t address, std::uint32_t num_banks) {
    return static_cast<std::uint32_t>((address >> 6) & (num_banks - 1));
}

std::uint32_t cell_of_address(std::uint64_t address, std::uint32_t tracked_cells_per_bank) {
    return static_cast<std::uint32_t>(mix64(address) % tracked_cells_per_bank);
}

std::vector<double> draw_bank_baselines(const SimConfig& cfg, std::uint64_t seed) {
    const double sigma = std::sqrt(cfg.endurance_variance);
    std::vector<double> baselines(cfg.num_banks);
    for (std::uint32_t b = 0; b < cfg.num_banks; ++b) {
        SplitMix64 rng(derive_seed(seed, b));
        baselines[b] = cfg.endurance_mean + sigma * rng.next_normal();
    }
    return baselines;
}

EnduranceResult endurance_account(std::span<const std::uint64_t> write_addresses,
                                  const SimConfig& cfg, std::uint64_t seed) {
    const std::uint32_t cells = cfg.tracked_cells_per_bank;
    std::vector<std::uint64_t> counters(static_cast<std::size_t>(cfg.num_banks) * cells, 0);
    for (std::uint64_t addr : write_addresses) {
        std::uint32_t bank = bank_of_address(addr, cfg.num_banks);
        std::uint32_t cell = cell_of_address(addr, cells);
        ++counters[static_cast<std::size_t>(bank) * cells + cell];
    }

    EnduranceResult result;
    result.per_bank = draw_bank_baselines(cfg, seed);
    double sum = 0.0;
    for (std::uint32_t b = 0; b < cfg.num_banks; ++b) {
        std::uint64_t bank_writes = 0;
        for (std::uint32_t c = 0; c < cells; ++c)
            bank_writes += counters[static_cast<std::size_t>(b) * cells + c];
        double mean_wear = static_cast<double>(bank_writes) / static_cast<double>(cells);
        result.per_bank[b] -= mean_wear;
        sum += result.per_bank[b];
    }
    result.mean = sum / static_cast<double>(cfg.num_banks);
    return result;
}

SimResult simulate(const Trace& trace, const DeviceParams& params, const SimConfig& cfg,
                   std::uint64_t seed) {
    cfg.validate();
    if (cfg.word_bits != 64)
        throw DataError("simulate: WordBits must be 64, got " + format_u64(cfg.word_bits));
    if (trace.records.empty())
        throw DataError("simulate: empty trace");

    // Exact integer tallies during the pass; floating-point totals are formed
    // once at the end so constant-payload traces match the closed forms.
    std::array<std::uint64_t, 65> popcount_hist{};
    std::vector<std::uint64_t> write_addresses;
    write_addresses.reserve(trace.records.size() / 2);

    std::uint64_t reads = 0;
    std::uint64_t writes = 0;
    std::uint64_t prev_cycle = 0;
    bool first = true;
    for (const TraceRecord& rec : trace.records) {
        if (!first && rec.cycle < prev_cycle)
            throw DataError("simulate: trace cycle regression at cycle " + format_u64(rec.cycle));
        first = false;
        prev_cycle = rec.cycle;
        if (rec.op == TraceOp::Write) {
            ++writes;
            ++popcount_hist[static_cast<std::size_t>(std::popcount(rec.data))];
            write_addresses.push_back(rec.address);
        } else {
            ++reads;
        }
    }

    PulseEnergies energies = compute_pulse_energies(params, cfg);

    SimResult result;
    result.total_reads = reads;
    result.total_writes = writes;
    for (unsigned pc = 0; pc <= 64; ++pc) {
        if (popcount_hist[pc] != 0)
            result.total_write_energy_pj += static_cast<double>(popcount_hist[pc]) *
                                            word_energy_for_popcount(pc, 64, energies);
    }
    result.total_write_latency_ns = static_cast<double>(writes) * write_latency(params);
    result.total_energy_pj =
        result.total_write_energy_pj + static_cast<double>(reads) * cfg.read_energy_pj;
    result.total_latency_ns =
        result.total_write_latency_ns + static_cast<double>(reads) * cfg.read_latency_ns;

    EnduranceResult endurance = endurance_account(write_addresses, cfg, seed);
    result.endurance_per_bank = std::move(endurance.per_bank);
    result.endurance_mean = endurance.mean;

    const TraceRecord& last = trace.records.back();
    double last_latency_ns =
        last.op == TraceOp::Write ? write_latency(params) : cfg.read_latency_ns;
    result.sim_cycles =
        last.cycle + static_cast<std::uint64_t>(std::ceil(last_latency_ns * cfg.clock_mhz / 1000.0));
    return result;
}

} // namespace pcmml
