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

#ifndef PCMML_THERMAL_HPP
#define PCMML_THERMAL_HPP

namespace pcmml {

/// Linear model of the RESET power density of a GST cell against ambient
/// temperature: P(T) = g - h * T, in MW/cm^2. The defaults are measured
/// constants for Ge2Sb2Te5.
struct ThermalParams {
    double g = 32.9;     ///< MW/cm^2, power density at 0 K
    double h = 0.04;     ///< MW/(cm^2 K), slope
    double t_ref = 300.0; ///< K, reference ambient for the energy ratio

    void validate() const; ///< throws DataError unless g > 0, h >= 0, 0 < t_ref < g/h
};

/// P(T) = g - h * T. Throws DataError when T is negative or the resulting
/// power density would be non-positive (T >= g/h).
double reset_power_density(double t_ambient_k, const ThermalParams& p);

/// Dimensionless RESET-energy factor P(T) / P(t_ref). Equals 1 at the
/// reference temperature and decreases linearly in T. The simulator
/// multiplies every per-bit RESET energy by this factor when thermal mode is
/// enabled; SET energy is untouched.
double thermal_energy_scale(double t_ambient_k, const ThermalParams& p);

} // namespace pcmml

#endif // PCMML_THERMAL_HPP
