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

#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pcmml/error.hpp"
#include "pcmml/eval.hpp"
#include "pcmml/pipeline.hpp"
#include "pcmml/rng.hpp"
#include "pcmml/simulator.hpp"
#include "pcmml/thermal.hpp"

namespace py = pybind11;

namespace {

pcmml::ThermalParams thermal_params(double g, double h, double t_ref) {
    pcmml::ThermalParams p;
    p.g = g;
    p.h = h;
    p.t_ref = t_ref;
    p.validate();
    return p;
}

pcmml::DeviceParams device_params(double set_v, double set_t, double reset_v, double reset_t) {
    pcmml::DeviceParams p;
    p.set_voltage = set_v;
    p.set_pulse_ns = set_t;
    p.reset_voltage = reset_v;
    p.reset_pulse_ns = reset_t;
    return p;
}

pcmml::SimConfig sim_config(const std::optional<std::string>& config_path) {
    pcmml::SimConfig cfg;
    if (config_path) cfg = pcmml::load_sim_config(*config_path);
    cfg.validate();
    return cfg;
}

py::dict eval_report_dict(const pcmml::EvalReport& report) {
    py::dict mape;
    for (const pcmml::HeadEval& he : report.heads) {
        mape[pcmml::head_name(he.head)] = he.mape_percent;
    }
    return mape;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "PCM write-parameter surrogate: simulator, dataset pipeline, and MLP heads";
    m.attr("__version__") = pcmml::kToolVersion;

    py::register_exception<pcmml::DataError>(m, "DataError", PyExc_ValueError);

    m.def("mix64", &pcmml::mix64, py::arg("z"), "SplitMix64 finalizer of a 64-bit value");
    m.def("derive_seed", &pcmml::derive_seed, py::arg("base"), py::arg("stream"),
          "Child seed for an indexed substream of a base seed");

    m.def("bit_pulse_energy", &pcmml::bit_pulse_energy, py::arg("voltage_v"), py::arg("pulse_ns"),
          py::arg("conductance_s"), "Per-bit pulse energy G*V^2*t in pJ");
    m.def(
        "write_latency",
        [](double set_t, double reset_t) {
            return pcmml::write_latency(device_params(2.0, set_t, 3.0, reset_t));
        },
        py::arg("set_pulse_ns"), py::arg("reset_pulse_ns"),
        "Per-write latency: set pulse + reset pulse, ns");

    m.def(
        "reset_power_density",
        [](double t_ambient, double g, double h, double t_ref) {
            return pcmml::reset_power_density(t_ambient, thermal_params(g, h, t_ref));
        },
        py::arg("t_ambient"), py::arg("g") = 32.9, py::arg("h") = 0.04, py::arg("t_ref") = 300.0,
        "RESET power density g - h*T in MW/cm^2");
    m.def(
        "thermal_energy_scale",
        [](double t_ambient, double g, double h, double t_ref) {
            return pcmml::thermal_energy_scale(t_ambient, thermal_params(g, h, t_ref));
        },
        py::arg("t_ambient"), py::arg("g") = 32.9, py::arg("h") = 0.04, py::arg("t_ref") = 300.0,
        "Multiplicative RESET-energy correction, 1.0 at the reference temperature");

    m.def("huber", &pcmml::huber_value, py::arg("error"), py::arg("delta") = 1.0,
          "Pointwise Huber loss");
    m.def(
        "mape",
        [](const std::vector<double>& actuals, const std::vector<double>& predictions) {
            return pcmml::mape(actuals, predictions);
        },
        py::arg("actuals"), py::arg("predictions"),
        "100 * mean(|a - p| / |a|); zero actuals are rejected");

    m.def(
        "split_sizes",
        [](std::size_t n_rows, std::uint64_t seed) {
            const pcmml::SplitIndices s = pcmml::split_indices(n_rows, seed);
            return py::make_tuple(s.train.size(), s.validation.size(), s.test.size());
        },
        py::arg("n_rows"), py::arg("seed") = 42,
        "(train, validation, test) sizes of the 60/20/20 split");

    m.def(
        "generate_traces",
        [](const std::string& out_dir, std::uint64_t seed, std::uint64_t length) {
            pcmml::GenTracesOptions opt;
            opt.out_dir = out_dir;
            opt.seed = seed;
            opt.length = length;
            return pcmml::stage_gen_traces(opt).size();
        },
        py::arg("out_dir"), py::arg("seed") = 42,
        py::arg("length") = pcmml::kDefaultTraceLength,
        "Write the synthetic trace corpus + corpus.csv; returns the trace count");

    m.def(
        "simulate_trace",
        [](const std::string& trace_path, double set_v, double set_t, double reset_v,
           double reset_t, std::uint64_t seed, const std::optional<std::string>& config_path) {
            const pcmml::Trace trace = pcmml::parse_trace_file(trace_path);
            const pcmml::SimConfig cfg = sim_config(config_path);
            const pcmml::SimResult r =
                pcmml::simulate(trace, device_params(set_v, set_t, reset_v, reset_t), cfg, seed);
            py::dict d;
            d["reads"] = r.total_reads;
            d["writes"] = r.total_writes;
            d["total_write_energy_pj"] = r.total_write_energy_pj;
            d["total_energy_pj"] = r.total_energy_pj;
            d["total_write_latency_ns"] = r.total_write_latency_ns;
            d["total_latency_ns"] = r.total_latency_ns;
            d["endurance_per_bank"] = r.endurance_mean;
            d["sim_cycles"] = r.sim_cycles;
            return d;
        },
        py::arg("trace_path"), py::arg("set_v") = 2.0, py::arg("set_t") = 155.0,
        py::arg("reset_v") = 3.0, py::arg("reset_t") = 105.0, py::arg("seed") = 42,
        py::arg("config_path") = std::nullopt,
        "Run one trace through the device model; returns the target totals");

    m.def(
        "predict",
        [](const std::string& model_path, const std::string& scaler_path, double set_v,
           double set_t, double reset_v, double reset_t, std::uint64_t reads,
           std::uint64_t writes) {
            const pcmml::MlpModel model = pcmml::load_model(model_path);
            const pcmml::Scaler scaler = pcmml::load_scaler(scaler_path);
            const pcmml::Prediction p = pcmml::predict(
                model, scaler, device_params(set_v, set_t, reset_v, reset_t), reads, writes);
            py::dict d;
            d["write_energy_pj"] = p.write_energy_pj;
            d["write_latency_ns"] = p.write_latency_ns;
            d["endurance_writes"] = p.endurance_writes;
            return d;
        },
        py::arg("model_path"), py::arg("scaler_path"), py::arg("set_v"), py::arg("set_t"),
        py::arg("reset_v"), py::arg("reset_t"), py::arg("reads"), py::arg("writes"),
        "Forward pass through a saved model in original units");

    m.def(
        "run_pipeline",
        [](const std::string& out_dir, std::uint64_t seed, unsigned jobs, std::uint64_t length,
           std::size_t max_epochs, std::size_t batch_size) {
            pcmml::PipelineOptions opt;
            opt.out_dir = out_dir;
            opt.seed = seed;
            opt.jobs = jobs;
            opt.trace_length = length;
            opt.max_epochs = max_epochs;
            opt.batch_size = batch_size;
            const pcmml::PipelineResult r = pcmml::run_pipeline(opt);
            py::dict d;
            d["dataset"] = r.dataset_path.string();
            d["model"] = r.model_path.string();
            d["scaler"] = r.scaler_path.string();
            d["history"] = r.history_path.string();
            d["epochs"] = r.history.epochs.size();
            d["mape_percent"] = eval_report_dict(r.report);
            return d;
        },
        py::arg("out_dir"), py::arg("seed") = 42, py::arg("jobs") = 1,
        py::arg("length") = pcmml::kDefaultTraceLength,
        py::arg("max_epochs") = pcmml::TrainConfig{}.max_epochs,
        py::arg("batch_size") = pcmml::TrainConfig{}.batch_size,
        "Full gen-traces -> sweep -> preprocess -> train -> evaluate run");
}
