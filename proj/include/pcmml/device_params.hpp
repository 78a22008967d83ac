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

#ifndef PCMML_DEVICE_PARAMS_HPP
#define PCMML_DEVICE_PARAMS_HPP

#include <array>

namespace pcmml {

/// The discrete programming-parameter levels swept by the experiment. These
/// same lists drive the one-hot encoders, so they are defined once here, in
/// ascending order.
inline constexpr std::array<double, 3> kSetVoltageLevels{1.5, 2.0, 2.5};
inline constexpr std::array<double, 3> kSetPulseLevelsNs{150.0, 155.0, 160.0};
inline constexpr std::array<double, 3> kResetVoltageLevels{2.5, 3.0, 3.5};
inline constexpr std::array<double, 3> kResetPulseLevelsNs{100.0, 105.0, 110.0};

/// One point of the SET/RESET programming grid.
struct DeviceParams {
    double set_voltage = 2.0;     ///< V
    double set_pulse_ns = 155.0;  ///< ns
    double reset_voltage = 3.0;   ///< V
    double reset_pulse_ns = 105.0; ///< ns

    /// Throws DataError unless every field is one of the grid levels above.
    void validate() const;

    bool operator==(const DeviceParams&) const = default;
};

} // namespace pcmml

#endif // PCMML_DEVICE_PARAMS_HPP
