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

#include "pcmml/thermal.hpp"

#include "pcmml/error.hpp"
#include "pcmml/textio.hpp"

namespace pcmml {

void ThermalParams::validate() const {
    if (!(g > 0.0))
        throw DataError("thermal: g must be positive, got " + format_double(g));
    if (!(h >= 0.0))
        throw DataError("thermal: h must be nonnegative, got " + format_double(h));
    if (!(t_ref > 0.0) || (h > 0.0 && !(t_ref < g / h)))
        throw DataError("thermal: t_ref must lie in (0, g/h), got " + format_double(t_ref));
}

double reset_power_density(double t_ambient_k, const ThermalParams& p) {
    p.validate();
    if (!(t_ambient_k >= 0.0))
        throw DataError("thermal: ambient temperature must be nonnegative, got " +
                        format_double(t_ambient_k));
    double power = p.g - p.h * t_ambient_k;
    if (!(power > 0.0))
        throw DataError("thermal: ambient temperature " + format_double(t_ambient_k) +
                        " K gives non-positive RESET power density");
    return power;
}

double thermal_energy_scale(double t_ambient_k, const ThermalParams& p) {
    return reset_power_density(t_ambient_k, p) / reset_power_density(p.t_ref, p);
}

} // namespace pcmml
