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

#ifndef PCMML_SIM_CONFIG_HPP
#define PCMML_SIM_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pcmml/thermal.hpp"

namespace pcmml {

/// Carried from the config file but not acted on: the surrogate controller
/// uses fixed per-op service times, so FRFCFS queues are never scheduled.
enum class ControllerType { FRFCFS };
enum class EnduranceModelType { BitModel };
enum class EnduranceDistType { Normal };

/// Bank/device simulation configuration. Defaults mirror the experiment
/// setup; the file format is plain `Key Value` lines with `;` comments (see
/// config key table in the README).
struct SimConfig {
    double clock_mhz = 400.0;
    std::uint32_t bus_width_bits = 64;
    std::uint32_t bits_per_device = 8;
    double cpu_mhz = 2000.0;
    std::uint32_t mlc_levels = 2;
    ControllerType controller = ControllerType::FRFCFS;
    std::string address_map = "R:RK:BK:CH"; ///< carried; only the bank field is honored
    std::uint32_t read_queue = 32;
    std::uint32_t write_queue = 32;
    EnduranceModelType endurance_model = EnduranceModelType::BitModel;
    EnduranceDistType endurance_dist = EnduranceDistType::Normal;
    double endurance_mean = 1000000.0;     ///< writes
    double endurance_variance = 100000.0;  ///< writes^2

    // Surrogate device-model parameters.
    std::uint32_t word_bits = 64;
    std::uint32_t tracked_cells_per_bank = 4096;
    double bit_conductance = 2.0e-5; ///< S, effective conductance during a pulse
    double read_latency_ns = 48.0;
    double read_energy_pj = 50.0;
    std::uint32_t num_banks = 8;     ///< power of two; bank = address bits [6, 6+log2)

    // Ambient-temperature RESET-energy correction.
    bool thermal_enable = false;
    double ambient_k = 300.0;
    ThermalParams thermal;

    /// Throws DataError on non-positive counts/frequencies, endurance_mean
    /// <= 0, non-power-of-two num_banks, or invalid thermal parameters.
    void validate() const;
};

/// Parses config text. Unknown keys produce a warning string (collected into
/// `warnings` when given, otherwise printed to stderr), never an error.
/// Malformed lines and unsupported enum values throw DataError with the line
/// number.
SimConfig parse_sim_config(std::string_view text, std::vector<std::string>* warnings = nullptr);

SimConfig load_sim_config(const std::filesystem::path& path,
                          std::vector<std::string>* warnings = nullptr);

} // namespace pcmml

#endif // PCMML_SIM_CONFIG_HPP
