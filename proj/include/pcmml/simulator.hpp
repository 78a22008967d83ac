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

#ifndef PCMML_SIMULATOR_HPP
#define PCMML_SIMULATOR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "pcmml/device_params.hpp"
#include "pcmml/sim_config.hpp"
#include "pcmml/trace.hpp"

namespace pcmml {

/// Surrogate PCM device model.
///
/// Energy: per-bit Joule heating E = G * V^2 * t. Writes reprogram all 64
/// bits of the word: bits equal to 1 take one SET pulse, bits equal to 0 one
/// RESET pulse. Latency: a write issues RESET then SET, so the per-write
/// latency is the sum of the two pulse durations; reads use the fixed
/// config service time. There is no leakage term.

/// G * V^2 * t in picojoules (1 W*ns = 1000 pJ). Monotone nondecreasing in
/// each argument. Throws DataError on negative voltage/pulse or
/// non-positive conductance.
double bit_pulse_energy(double voltage_v, double pulse_ns, double conductance_s);

/// Per-bit SET/RESET energies for one (params, config) point; the RESET
/// energy carries the ambient-temperature factor when thermal mode is on.
struct PulseEnergies {
    double set_pj = 0.0;
    double reset_pj = 0.0;
};
PulseEnergies compute_pulse_energies(const DeviceParams& params, const SimConfig& cfg);

/// Energy of a word write with `set_bits` ones: set_bits * E_set +
/// (word_bits - set_bits) * E_reset.
double word_energy_for_popcount(unsigned set_bits, unsigned word_bits, const PulseEnergies& e);

/// Energy of writing `data`, all 64 bits reprogrammed. Requires
/// cfg.word_bits == 64.
double word_write_energy(std::uint64_t data, const DeviceParams& params, const SimConfig& cfg);

/// RESET-then-SET program sequence: set_pulse + reset_pulse, in ns.
double write_latency(const DeviceParams& params);

/// Bank index of an address: bits [6, 6 + log2(num_banks)).
std::uint32_t bank_of_address(std::uint64_t address, std::uint32_t num_banks);

/// Cell counter index within a bank: mix64(address) % tracked_cells_per_bank.
std::uint32_t cell_of_address(std::uint64_t address, std::uint32_t tracked_cells_per_bank);

/// Per-bank endurance baselines drawn once per run from
/// Normal(EnduranceDistMean, sqrt(EnduranceDistVariance)); bank b uses the
/// SplitMix64 stream derive_seed(seed, b), one Box-Muller normal each.
std::vector<double> draw_bank_baselines(const SimConfig& cfg, std::uint64_t seed);

struct EnduranceResult {
    std::vector<double> per_bank; ///< drawn baseline minus mean per-cell wear
    double mean = 0.0;            ///< average over banks, the dataset target
};

/// BitModel-style wear accounting: every write increments one tracked cell
/// counter in its bank; a bank's remaining endurance is its drawn baseline
/// minus the mean of its per-cell counters. Depends only on the address
/// stream and the seed, never on voltages or pulse durations.
EnduranceResult endurance_account(std::span<const std::uint64_t> write_addresses,
                                  const SimConfig& cfg, std::uint64_t seed);

struct SimResult {
    std::uint64_t total_reads = 0;
    std::uint64_t total_writes = 0;
    double total_write_energy_pj = 0.0;
    double total_energy_pj = 0.0;
    double total_write_latency_ns = 0.0;
    double total_latency_ns = 0.0;
    std::vector<double> endurance_per_bank;
    double endurance_mean = 0.0;
    std::uint64_t sim_cycles = 0;
};

/// Runs the trace front to back. Deterministic for fixed (trace, params,
/// cfg, seed); the seed only feeds the endurance baselines. Write energy is
/// accumulated through an exact popcount histogram, so for a constant write
/// payload the total equals writes * word_write_energy(payload) bit for bit.
/// Throws DataError on an empty trace or a cycle regression.
SimResult simulate(const Trace& trace, const DeviceParams& params, const SimConfig& cfg,
                   std::uint64_t seed);

} // namespace pcmml

#endif // PCMML_SIMULATOR_HPP
