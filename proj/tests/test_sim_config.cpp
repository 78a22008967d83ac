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

#include <string>
#include <vector>

#include <doctest.h>

#include "pcmml/device_params.hpp"
#include "pcmml/error.hpp"
#include "pcmml/sim_config.hpp"

using namespace pcmml;

TEST_SUITE_BEGIN("sim_config");

TEST_CASE("defaults match the published configuration") {
    const SimConfig cfg;
    CHECK(cfg.clock_mhz == 400.0);
    CHECK(cfg.bus_width_bits == 64);
    CHECK(cfg.bits_per_device == 8);
    CHECK(cfg.cpu_mhz == 2000.0);
    CHECK(cfg.mlc_levels == 2);
    CHECK(cfg.controller == ControllerType::FRFCFS);
    CHECK(cfg.address_map == "R:RK:BK:CH");
    CHECK(cfg.read_queue == 32);
    CHECK(cfg.write_queue == 32);
    CHECK(cfg.endurance_model == EnduranceModelType::BitModel);
    CHECK(cfg.endurance_dist == EnduranceDistType::Normal);
    CHECK(cfg.endurance_mean == 1000000.0);
    CHECK(cfg.endurance_variance == 100000.0);
    CHECK(cfg.word_bits == 64);
    CHECK(cfg.tracked_cells_per_bank == 4096);
    CHECK(cfg.bit_conductance == 2.0e-5);
    CHECK(cfg.read_latency_ns == 48.0);
    CHECK(cfg.read_energy_pj == 50.0);
    CHECK(cfg.num_banks == 8);
    CHECK_FALSE(cfg.thermal_enable);
    CHECK(cfg.ambient_k == 300.0);
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("every documented key is parsed") {
    const std::string text =
        "CLK 500\n"
        "BusWidth 32\n"
        "DeviceWidth 4\n"
        "CPUFreq 3000\n"
        "MLCLevels 4\n"
        "MEM_CTL FRFCFS\n"
        "AddressMappingScheme RK:BK:R:CH\n"
        "ReadQueueSize 16\n"
        "WriteQueueSize 8\n"
        "EnduranceModel BitModel\n"
        "EnduranceDist Normal\n"
        "EnduranceDistMean 2000000\n"
        "EnduranceDistVariance 50000\n"
        "WordBits 64\n"
        "TrackedCellsPerBank 1024\n"
        "BitConductance 1.5e-5\n"
        "ReadLatencyNs 40\n"
        "ReadEnergyPj 45\n"
        "NumBanks 16\n"
        "ThermalEnable 1\n"
        "AmbientK 350\n"
        "ThermalG 30\n"
        "ThermalH 0.02\n"
        "ThermalTref 310\n";
    std::vector<std::string> warnings;
    const SimConfig cfg = parse_sim_config(text, &warnings);
    CHECK(warnings.empty());
    CHECK(cfg.clock_mhz == 500.0);
    CHECK(cfg.bus_width_bits == 32);
    CHECK(cfg.bits_per_device == 4);
    CHECK(cfg.cpu_mhz == 3000.0);
    CHECK(cfg.mlc_levels == 4);
    CHECK(cfg.address_map == "RK:BK:R:CH");
    CHECK(cfg.read_queue == 16);
    CHECK(cfg.write_queue == 8);
    CHECK(cfg.endurance_mean == 2000000.0);
    CHECK(cfg.endurance_variance == 50000.0);
    CHECK(cfg.word_bits == 64);
    CHECK(cfg.tracked_cells_per_bank == 1024);
    CHECK(cfg.bit_conductance == 1.5e-5);
    CHECK(cfg.read_latency_ns == 40.0);
    CHECK(cfg.read_energy_pj == 45.0);
    CHECK(cfg.num_banks == 16);
    CHECK(cfg.thermal_enable);
    CHECK(cfg.ambient_k == 350.0);
    CHECK(cfg.thermal.g == 30.0);
    CHECK(cfg.thermal.h == 0.02);
    CHECK(cfg.thermal.t_ref == 310.0);
}

TEST_CASE("comments, blank lines, and whitespace are tolerated") {
    const std::string text =
        "; full-line comment\n"
        "\n"
        "  CLK   800   ; trailing comment\n"
        "\tNumBanks\t4\t\n"
        "   \t  \n";
    std::vector<std::string> warnings;
    const SimConfig cfg = parse_sim_config(text, &warnings);
    CHECK(warnings.empty());
    CHECK(cfg.clock_mhz == 800.0);
    CHECK(cfg.num_banks == 4);
}

TEST_CASE("unknown keys warn but do not fail") {
    std::vector<std::string> warnings;
    const SimConfig cfg = parse_sim_config("CLK 400\nFrobnicate 7\n", &warnings);
    CHECK(cfg.clock_mhz == 400.0);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0] == "config line 2: unknown key 'Frobnicate' ignored");
}

TEST_CASE("unsupported enum values are rejected with the line number") {
    CHECK_THROWS_WITH_AS(parse_sim_config("MEM_CTL FCFS\n", nullptr),
                         "config line 1: unsupported MEM_CTL 'FCFS'", DataError);
    CHECK_THROWS_WITH_AS(parse_sim_config("CLK 400\nEnduranceModel WordModel\n", nullptr),
                         "config line 2: unsupported EnduranceModel 'WordModel'", DataError);
    CHECK_THROWS_WITH_AS(parse_sim_config("EnduranceDist Uniform\n", nullptr),
                         "config line 1: unsupported EnduranceDist 'Uniform'", DataError);
}

TEST_CASE("malformed lines are rejected with the line number") {
    CHECK_THROWS_WITH_AS(parse_sim_config("CLK\n", nullptr),
                         "config line 1: expected 'Key Value'", DataError);
    CHECK_THROWS_WITH_AS(parse_sim_config("CLK ; no value\n", nullptr),
                         "config line 1: expected 'Key Value'", DataError);
    CHECK_THROWS_AS(parse_sim_config("CLK fast\n", nullptr), DataError);
    CHECK_THROWS_AS(parse_sim_config("NumBanks -1\n", nullptr), DataError);
    CHECK_THROWS_AS(parse_sim_config("ThermalEnable 2\n", nullptr), DataError);
}

TEST_CASE("validation rejects nonpositive and non-power-of-two settings") {
    CHECK_THROWS_AS(parse_sim_config("CLK 0\n", nullptr), DataError);
    CHECK_THROWS_AS(parse_sim_config("EnduranceDistMean 0\n", nullptr), DataError);
    CHECK_THROWS_AS(parse_sim_config("BitConductance 0\n", nullptr), DataError);
    CHECK_THROWS_AS(parse_sim_config("NumBanks 12\n", nullptr), DataError);
    CHECK_THROWS_AS(parse_sim_config("NumBanks 0\n", nullptr), DataError);
    CHECK_NOTHROW(parse_sim_config("NumBanks 1\n", nullptr));

    SimConfig cfg;
    cfg.endurance_variance = -1.0;
    CHECK_THROWS_AS(cfg.validate(), DataError);
}

TEST_CASE("thermal parameters are validated only when enabled") {
    SimConfig cfg;
    cfg.thermal.g = -1.0;
    CHECK_NOTHROW(cfg.validate());
    cfg.thermal_enable = true;
    CHECK_THROWS_AS(cfg.validate(), DataError);
    CHECK_THROWS_AS(parse_sim_config("ThermalEnable 1\nThermalH 0.2\n", nullptr), DataError);
    CHECK_NOTHROW(parse_sim_config("ThermalEnable 1\nAmbientK 320\n", nullptr));
}

TEST_CASE("device parameters validate against the grids") {
    CHECK_NOTHROW(DeviceParams{}.validate());
    for (double sv : kSetVoltageLevels)
        for (double st : kSetPulseLevelsNs)
            for (double rv : kResetVoltageLevels)
                for (double rt : kResetPulseLevelsNs)
                    CHECK_NOTHROW(DeviceParams{sv, st, rv, rt}.validate());

    CHECK_THROWS_AS((DeviceParams{1.75, 155.0, 3.0, 105.0}.validate()), DataError);
    CHECK_THROWS_AS((DeviceParams{2.0, 151.0, 3.0, 105.0}.validate()), DataError);
    CHECK_THROWS_AS((DeviceParams{2.0, 155.0, 2.0, 105.0}.validate()), DataError);
    CHECK_THROWS_AS((DeviceParams{2.0, 155.0, 3.0, 99.0}.validate()), DataError);
}

TEST_SUITE_END();
