# Copyright 2026 The pcmml Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""PCM write-parameter surrogate: device simulator, dataset pipeline, MLP heads."""

from ._core import (
    DataError,
    __version__,
    bit_pulse_energy,
    derive_seed,
    generate_traces,
    huber,
    mape,
    mix64,
    predict,
    reset_power_density,
    run_pipeline,
    simulate_trace,
    split_sizes,
    thermal_energy_scale,
    write_latency,
)

__all__ = [
    "DataError",
    "__version__",
    "bit_pulse_energy",
    "derive_seed",
    "generate_traces",
    "huber",
    "mape",
    "mix64",
    "predict",
    "reset_power_density",
    "run_pipeline",
    "simulate_trace",
    "split_sizes",
    "thermal_energy_scale",
    "write_latency",
]
