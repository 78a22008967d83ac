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

#include "pcmml/sim_config.hpp"

#include <algorithm>
#include <iostream>

#include "pcmml/device_params.hpp"
#include "pcmml/error.hpp"
#include "pcmml/textio.hpp"

namespace pcmml {

void DeviceParams::validate() const {
    auto on_grid = [](double v, const std::array<double, 3>& levels) {
        return std::find(levels.begin(), levels.end(), v) != levels.end();
    };
    if (!on_grid(set_voltage, kSetVoltageLevels))
        throw DataError("set voltage " + format_double(set_voltage) + " V is not a grid level");
    if (!on_grid(set_pulse_ns, kSetPulseLevelsNs))
        throw DataError("set pulse " + format_double(set_pulse_ns) + " ns is not a grid level");
    if (!on_grid(reset_voltage, kResetVoltageLevels))
        throw DataError("reset voltage " + format_double(reset_voltage) + " V is not a grid level");
    if (!on_grid(reset_pulse_ns, kResetPulseLevelsNs))
        throw DataError("reset pulse " + format_double(reset_pulse_ns) + " ns is not a grid level");
}

void SimConfig::validate() const {
    auto require_positive = [](double v, const char* name) {
        if (!(v > 0.0))
            throw DataError(std::string("config: ") + name + " must be positive");
    };
    require_positive(clock_mhz, "CLK");
    require_positive(cpu_mhz, "CPUFreq");
    require_positive(static_cast<double>(bus_width_bits), "BusWidth");
    require_positive(static_cast<double>(bits_per_device), "DeviceWidth");
    require_positive(static_cast<double>(mlc_levels), "MLCLevels");
    require_positive(static_cast<double>(read_queue), "ReadQueueSize");
    require_positive(static_cast<double>(write_queue), "WriteQueueSize");
    require_positive(endurance_mean, "EnduranceDistMean");
    if (endurance_variance < 0.0)
        throw DataError("config: EnduranceDistVariance must be nonnegative");
    require_positive(static_cast<double>(word_bits), "WordBits");
    require_positive(static_cast<double>(tracked_cells_per_bank), "TrackedCellsPerBank");
    require_positive(bit_conductance, "BitConductance");
    require_positive(read_latency_ns, "ReadLatencyNs");
    require_positive(read_energy_pj, "ReadEnergyPj");
    if (num_banks == 0 || (num_banks & (num_banks - 1)) != 0)
        throw DataError("config: NumBanks must be a power of two");
    if (thermal_enable)
        thermal.validate();
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::uint32_t parse_count(std::string_view v, std::string_view key) {
    return static_cast<std::uint32_t>(parse_u64(v, key));
}

} // namespace

SimConfig parse_sim_config(std::string_view text, std::vector<std::string>* warnings) {
    SimConfig cfg;
    auto warn = [&](const std::string& msg) {
        if (warnings)
            warnings->push_back(msg);
        else
            std::cerr << "warning: " << msg << "\n";
    };

    std::size_t line_no = 0;
    for (std::string_view raw : split_lines(text)) {
        ++line_no;
        std::string_view line = raw;
        if (std::size_t sc = line.find(';'); sc != std::string_view::npos)
            line = line.substr(0, sc);
        line = trim(line);
        if (line.empty())
            continue;

        std::size_t sep = line.find_first_of(" \t");
        if (sep == std::string_view::npos)
            throw DataError("config line " + format_u64(line_no) + ": expected 'Key Value'");
        std::string_view key = line.substr(0, sep);
        std::string_view value = trim(line.substr(sep + 1));
        if (value.empty())
            throw DataError("config line " + format_u64(line_no) + ": missing value for key '" +
                            std::string(key) + "'");

        auto ctx = [&]() { return "config line " + format_u64(line_no); };
        if (key == "CLK") {
            cfg.clock_mhz = parse_double(value, ctx());
        } else if (key == "BusWidth") {
            cfg.bus_width_bits = parse_count(value, ctx());
        } else if (key == "DeviceWidth") {
            cfg.bits_per_device = parse_count(value, ctx());
        } else if (key == "CPUFreq") {
            cfg.cpu_mhz = parse_double(value, ctx());
        } else if (key == "MLCLevels") {
            cfg.mlc_levels = parse_count(value, ctx());
        } else if (key == "MEM_CTL") {
            if (value != "FRFCFS")
                throw DataError(ctx() + ": unsupported MEM_CTL '" + std::string(value) + "'");
            cfg.controller = ControllerType::FRFCFS;
        } else if (key == "AddressMappingScheme") {
            cfg.address_map = std::string(value);
        } else if (key == "ReadQueueSize") {
            cfg.read_queue = parse_count(value, ctx());
        } else if (key == "WriteQueueSize") {
            cfg.write_queue = parse_count(value, ctx());
        } else if (key == "EnduranceModel") {
            if (value != "BitModel")
                throw DataError(ctx() + ": unsupported EnduranceModel '" + std::string(value) + "'");
            cfg.endurance_model = EnduranceModelType::BitModel;
        } else if (key == "EnduranceDist") {
            if (value != "Normal")
                throw DataError(ctx() + ": unsupported EnduranceDist '" + std::string(value) + "'");
            cfg.endurance_dist = EnduranceDistType::Normal;
        } else if (key == "EnduranceDistMean") {
            cfg.endurance_mean = parse_double(value, ctx());
        } else if (key == "EnduranceDistVariance") {
            cfg.endurance_variance = parse_double(value, ctx());
        } else if (key == "WordBits") {
            cfg.word_bits = parse_count(value, ctx());
        } else if (key == "TrackedCellsPerBank") {
            cfg.tracked_cells_per_bank = parse_count(value, ctx());
        } else if (key == "BitConductance") {
            cfg.bit_conductance = parse_double(value, ctx());
        } else if (key == "ReadLatencyNs") {
            cfg.read_latency_ns = parse_double(value, ctx());
        } else if (key == "ReadEnergyPj") {
            cfg.read_energy_pj = parse_double(value, ctx());
        } else if (key == "NumBanks") {
            cfg.num_banks = parse_count(value, ctx());
        } else if (key == "ThermalEnable") {
            std::uint64_t flag = parse_u64(value, ctx());
            if (flag > 1)
                throw DataError(ctx() + ": ThermalEnable must be 0 or 1");
            cfg.thermal_enable = flag == 1;
        } else if (key == "AmbientK") {
            cfg.ambient_k = parse_double(value, ctx());
        } else if (key == "ThermalG") {
            cfg.thermal.g = parse_double(value, ctx());
        } else if (key == "ThermalH") {
            cfg.thermal.h = parse_double(value, ctx());
        } else if (key == "ThermalTref") {
            cfg.thermal.t_ref = parse_double(value, ctx());
        } else {
            warn("config line " + format_u64(line_no) + ": unknown key '" + std::string(key) +
                 "' ignored");
        }
    }

    cfg.validate();
    return cfg;
}

SimConfig load_sim_config(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    return parse_sim_config(read_text_file(path), warnings);
}

} // namespace pcmml
