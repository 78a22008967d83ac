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

#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pcmml/error.hpp"
#include "pcmml/pipeline.hpp"
#include "pcmml/textio.hpp"
#include "pcmml/thermal.hpp"

namespace {

using pcmml::format_double;
using pcmml::format_u64;

std::optional<std::filesystem::path> opt_path(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::filesystem::path(s);
}

void print_summary(const pcmml::EvalReport& report) {
    std::cout << "output,mape_percent,n\n";
    const std::array<std::pair<const char*, pcmml::Head>, 3> rows{{
        {"endurance", pcmml::Head::Endurance},
        {"write_latency", pcmml::Head::Latency},
        {"write_energy", pcmml::Head::Energy},
    }};
    for (const auto& [label, head] : rows) {
        const pcmml::HeadEval& he = report.heads[static_cast<std::size_t>(head)];
        std::cout << label << "," << format_double(he.mape_percent) << "," << format_u64(he.n)
                  << "\n";
    }
}

struct Cmd {
    std::string stage;
    std::function<void()> run;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pcm write-parameter surrogate: trace generation, device sweep, dataset "
                 "preprocessing, three-headed MLP training, and evaluation"};
    app.set_version_flag("--version", std::string("pcmml ") + pcmml::kToolVersion);
    app.require_subcommand(1);
    Cmd cmd;

    // gen-traces
    {
        auto* sub = app.add_subcommand(
            "gen-traces", "Generate the 60-trace synthetic corpus (20 read-heavy, 20 balanced, "
                          "20 write-heavy; 100,000 ops each by default)");
        auto seed = std::make_shared<std::uint64_t>(42);
        auto length = std::make_shared<std::uint64_t>(pcmml::kDefaultTraceLength);
        auto out = std::make_shared<std::string>();
        sub->add_option("--seed", *seed, "Base seed; per-trace seeds are derived from it")
            ->capture_default_str();
        sub->add_option("--length", *length, "Operations per trace")->capture_default_str();
        sub->add_option("--out", *out, "Output directory for .trace files and corpus.csv")
            ->required();
        sub->footer("Trace file: '# pcm-trace v1' header, then 'CYCLE OP ADDRESS DATA' per line\n"
                    "(OP in {R,W}, ADDRESS/DATA as 0x + 16 hex digits). Corpus manifest:\n"
                    "CSV 'file,ratio_r,ratio_w,reads,writes,seed'.");
        sub->callback([=, &cmd] {
            cmd.stage = "gen-traces";
            cmd.run = [=] {
                pcmml::GenTracesOptions opt;
                opt.out_dir = *out;
                opt.seed = *seed;
                opt.length = *length;
                const auto corpus = pcmml::stage_gen_traces(opt);
                std::cout << "wrote " << corpus.size() << " traces and corpus.csv to " << *out
                          << "\n";
            };
        });
    }

    // sweep
    {
        auto* sub = app.add_subcommand(
            "sweep", "Simulate every (device parameter, trace) pair over the 81-point grid and "
                     "write the dataset CSV");
        auto traces = std::make_shared<std::string>();
        auto config = std::make_shared<std::string>();
        auto grid = std::make_shared<std::string>("full");
        auto seed = std::make_shared<std::uint64_t>(42);
        auto jobs = std::make_shared<unsigned>(1);
        auto out = std::make_shared<std::string>(".");
        sub->add_option("--traces", *traces, "Trace corpus directory (with corpus.csv)")
            ->required();
        sub->add_option("--config", *config, "Simulator config file (Key Value lines)");
        sub->add_option("--grid", *grid, "Parameter grid")
            ->check(CLI::IsMember({"full"}))
            ->capture_default_str();
        sub->add_option("--seed", *seed, "Endurance-baseline seed")->capture_default_str();
        sub->add_option("--jobs", *jobs, "Parallel simulation jobs (output is order-stable)")
            ->capture_default_str();
        sub->add_option("--out", *out, "Output directory for dataset.csv")
            ->capture_default_str();
        sub->footer("Dataset CSV header: row_id,set_v,set_t_ns,reset_v,reset_t_ns,trace_id,\n"
                    "reads,writes,total_write_energy_pj,total_energy_pj,total_write_latency_ns,\n"
                    "total_latency_ns,endurance_per_bank. Interrupted sweeps resume from the\n"
                    "existing file.");
        sub->callback([=, &cmd] {
            cmd.stage = "sweep";
            cmd.run = [=] {
                pcmml::SweepStageOptions opt;
                opt.traces_dir = *traces;
                opt.out_dir = *out;
                opt.config_path = opt_path(*config);
                opt.grid = *grid;
                opt.seed = *seed;
                opt.jobs = *jobs;
                const auto result = pcmml::stage_sweep(opt);
                std::cout << "sweep: " << result.stats.total << " rows ("
                          << result.stats.simulated << " simulated, " << result.stats.reused
                          << " reused, " << result.stats.failed << " failed) -> "
                          << result.dataset_path.string() << "\n";
            };
        });
    }

    // preprocess
    {
        auto* sub = app.add_subcommand(
            "preprocess", "One-hot encode, standardize with train-split statistics, and split "
                          "60/20/20 into train/test/validation");
        auto dataset = std::make_shared<std::string>();
        auto seed = std::make_shared<std::uint64_t>(42);
        auto out = std::make_shared<std::string>(".");
        sub->add_option("--dataset", *dataset, "Sweep dataset CSV")->required();
        sub->add_option("--seed", *seed, "Shuffle seed for the split")->capture_default_str();
        sub->add_option("--out", *out, "Output directory for encoded.csv and scaler.csv")
            ->capture_default_str();
        sub->footer("Encoded CSV header: row_id,f0..f13,t_energy,t_latency,t_endurance,split\n"
                    "(split in {train,val,test}); scaler CSV: name,mean,std with rows reads,\n"
                    "writes, t_energy, t_latency, t_endurance.");
        sub->callback([=, &cmd] {
            cmd.stage = "preprocess";
            cmd.run = [=] {
                pcmml::PreprocessOptions opt;
                opt.dataset_path = *dataset;
                opt.out_dir = *out;
                opt.seed = *seed;
                const auto result = pcmml::stage_preprocess(opt);
                std::cout << "encoded " << result.dataset.rows.size() << " rows (train "
                          << result.dataset.split.train.size() << ", val "
                          << result.dataset.split.validation.size() << ", test "
                          << result.dataset.split.test.size() << ")\n";
            };
        });
    }

    // train
    {
        auto* sub = app.add_subcommand(
            "train", "Train the three-headed MLP (Adam, Huber loss, L1/L2 penalties, "
                     "reduce-on-plateau learning rate, early stopping)");
        auto encoded = std::make_shared<std::string>();
        auto seed = std::make_shared<std::uint64_t>(42);
        auto max_epochs = std::make_shared<std::size_t>(pcmml::TrainConfig{}.max_epochs);
        auto batch = std::make_shared<std::size_t>(pcmml::TrainConfig{}.batch_size);
        auto out = std::make_shared<std::string>(".");
        sub->add_option("--encoded", *encoded, "Encoded dataset CSV")->required();
        sub->add_option("--seed", *seed, "Init + shuffle seed")->capture_default_str();
        sub->add_option("--max-epochs", *max_epochs, "Epoch cap")->capture_default_str();
        sub->add_option("--batch-size", *batch, "Minibatch size")->capture_default_str();
        sub->add_option("--out", *out, "Output directory for model.txt and history.csv")
            ->capture_default_str();
        sub->footer("Model file: 'pcm-mlp v1 seed=<u64>', then per head 'head <name>\n"
                    "layers=<n>' and per layer 'layer <i> <rows> <cols>' + <rows> weight lines\n"
                    "+ one bias line. History CSV: epoch,train_loss,val_loss,lr.");
        sub->callback([=, &cmd] {
            cmd.stage = "train";
            cmd.run = [=] {
                pcmml::TrainStageOptions opt;
                opt.encoded_path = *encoded;
                opt.out_dir = *out;
                opt.config.seed = *seed;
                opt.config.max_epochs = *max_epochs;
                opt.config.batch_size = *batch;
                const auto result = pcmml::stage_train(opt);
                const auto& epochs = result.result.history.epochs;
                double best = epochs.front().val_loss;
                for (const auto& e : epochs) best = std::min(best, e.val_loss);
                std::cout << "trained " << epochs.size() << " epochs; best validation loss "
                          << format_double(best) << "\n";
            };
        });
    }

    // evaluate
    {
        auto* sub = app.add_subcommand(
            "evaluate", "Compute test-split MAPE per output and write predicted-vs-actual "
                        "scatter files");
        auto encoded = std::make_shared<std::string>();
        auto scaler = std::make_shared<std::string>();
        auto model = std::make_shared<std::string>();
        auto history = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>(".");
        sub->add_option("--encoded", *encoded, "Encoded dataset CSV")->required();
        sub->add_option("--scaler", *scaler, "Scaler CSV")->required();
        sub->add_option("--model", *model, "Model file")->required();
        sub->add_option("--history", *history, "Training history CSV to reference");
        sub->add_option("--out", *out, "Output directory")->capture_default_str();
        sub->footer("Summary CSV: output,mape_percent,n (rows endurance, write_latency,\n"
                    "write_energy); scatter CSVs: regression_<head>.csv with actual,predicted\n"
                    "in original units.");
        sub->callback([=, &cmd] {
            cmd.stage = "evaluate";
            cmd.run = [=] {
                pcmml::EvaluateStageOptions opt;
                opt.encoded_path = *encoded;
                opt.scaler_path = *scaler;
                opt.model_path = *model;
                opt.history_path = opt_path(*history);
                opt.out_dir = *out;
                const auto result = pcmml::stage_evaluate(opt);
                print_summary(result.report);
            };
        });
    }

    // predict
    {
        auto* sub = app.add_subcommand(
            "predict", "One forward pass: device parameters + trace read/write counts -> "
                       "write energy (pJ), write latency (ns), endurance (writes)");
        auto set_v = std::make_shared<double>();
        auto set_t = std::make_shared<double>();
        auto reset_v = std::make_shared<double>();
        auto reset_t = std::make_shared<double>();
        auto reads = std::make_shared<std::uint64_t>();
        auto writes = std::make_shared<std::uint64_t>();
        auto model = std::make_shared<std::string>();
        auto scaler = std::make_shared<std::string>();
        sub->add_option("--set-v", *set_v, "SET voltage, one of 1.5/2.0/2.5 V")->required();
        sub->add_option("--set-t", *set_t, "SET pulse, one of 150/155/160 ns")->required();
        sub->add_option("--reset-v", *reset_v, "RESET voltage, one of 2.5/3.0/3.5 V")->required();
        sub->add_option("--reset-t", *reset_t, "RESET pulse, one of 100/105/110 ns")->required();
        sub->add_option("--reads", *reads, "Trace read count")->required();
        sub->add_option("--writes", *writes, "Trace write count")->required();
        sub->add_option("--model", *model, "Model file")->required();
        sub->add_option("--scaler", *scaler,
                        "Scaler CSV (default: scaler.csv next to the model file)");
        sub->footer("Prints three lines: write_energy_pj, write_latency_ns, endurance_writes.\n"
                    "Off-grid voltages/pulses are rejected (the model is one-hot encoded).");
        sub->callback([=, &cmd] {
            cmd.stage = "predict";
            cmd.run = [=] {
                const std::filesystem::path model_path = *model;
                const std::filesystem::path scaler_path =
                    scaler->empty() ? model_path.parent_path() / "scaler.csv"
                                    : std::filesystem::path(*scaler);
                const pcmml::MlpModel net = pcmml::load_model(model_path);
                const pcmml::Scaler sc = pcmml::load_scaler(scaler_path);
                pcmml::DeviceParams params;
                params.set_voltage = *set_v;
                params.set_pulse_ns = *set_t;
                params.reset_voltage = *reset_v;
                params.reset_pulse_ns = *reset_t;
                const pcmml::Prediction p = pcmml::predict(net, sc, params, *reads, *writes);
                std::cout << "write_energy_pj " << format_double(p.write_energy_pj) << "\n"
                          << "write_latency_ns " << format_double(p.write_latency_ns) << "\n"
                          << "endurance_writes " << format_double(p.endurance_writes) << "\n";
            };
        });
    }

    // thermal-table
    {
        auto* sub = app.add_subcommand(
            "thermal-table", "Tabulate RESET power density and the RESET-energy scale factor "
                             "over an ambient temperature range");
        auto t_min = std::make_shared<double>(250.0);
        auto t_max = std::make_shared<double>(400.0);
        auto t_step = std::make_shared<double>(10.0);
        auto config = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        sub->add_option("--t-min", *t_min, "Start temperature, kelvin")->capture_default_str();
        sub->add_option("--t-max", *t_max, "End temperature, kelvin (inclusive)")
            ->capture_default_str();
        sub->add_option("--t-step", *t_step, "Step, kelvin")->capture_default_str();
        sub->add_option("--config", *config,
                        "Simulator config supplying ThermalG/ThermalH/ThermalTref");
        sub->add_option("--out", *out, "Output CSV (stdout when omitted)");
        sub->footer("CSV: t_kelvin,reset_power_mw_cm2,scale. Power density is g - h*T; the\n"
                    "scale is its ratio to the reference-temperature value and multiplies\n"
                    "per-bit RESET energy when ThermalEnable is set.");
        sub->callback([=, &cmd] {
            cmd.stage = "thermal-table";
            cmd.run = [=] {
                pcmml::ThermalParams params;
                if (!config->empty()) {
                    params = pcmml::load_sim_config(*config).thermal;
                }
                params.validate();
                if (!(*t_step > 0.0)) throw pcmml::DataError("t-step must be positive");
                if (*t_min > *t_max) throw pcmml::DataError("t-min exceeds t-max");
                std::string csv = "t_kelvin,reset_power_mw_cm2,scale\n";
                for (double t = *t_min; t <= *t_max + 1e-9; t += *t_step) {
                    csv += format_double(t);
                    csv.push_back(',');
                    csv += format_double(pcmml::reset_power_density(t, params));
                    csv.push_back(',');
                    csv += format_double(pcmml::thermal_energy_scale(t, params));
                    csv.push_back('\n');
                }
                if (out->empty()) {
                    std::cout << csv;
                } else {
                    pcmml::write_text_file(*out, csv);
                    std::cout << "wrote " << *out << "\n";
                }
            };
        });
    }

    // pipeline
    {
        auto* sub = app.add_subcommand(
            "pipeline", "Run gen-traces -> sweep -> preprocess -> train -> evaluate with one "
                        "base seed and file handoff between stages");
        auto seed = std::make_shared<std::uint64_t>(42);
        auto out = std::make_shared<std::string>();
        auto jobs = std::make_shared<unsigned>(1);
        auto config = std::make_shared<std::string>();
        auto length = std::make_shared<std::uint64_t>(pcmml::kDefaultTraceLength);
        auto max_epochs = std::make_shared<std::size_t>(pcmml::TrainConfig{}.max_epochs);
        auto batch = std::make_shared<std::size_t>(pcmml::TrainConfig{}.batch_size);
        sub->add_option("--seed", *seed, "Base seed; stage seeds are derived from it")
            ->capture_default_str();
        sub->add_option("--out", *out, "Run directory")->required();
        sub->add_option("--jobs", *jobs, "Parallel sweep jobs")->capture_default_str();
        sub->add_option("--config", *config, "Simulator config file");
        sub->add_option("--length", *length, "Operations per trace")->capture_default_str();
        sub->add_option("--max-epochs", *max_epochs, "Training epoch cap")
            ->capture_default_str();
        sub->add_option("--batch-size", *batch, "Training minibatch size")
            ->capture_default_str();
        sub->footer("Outputs under --out: traces/, dataset.csv, encoded.csv, scaler.csv,\n"
                    "model.txt, history.csv, eval/, plus one manifest JSON per stage. Two runs\n"
                    "with the same seed are byte-identical apart from manifest timestamps.");
        sub->callback([=, &cmd] {
            cmd.stage = "pipeline";
            cmd.run = [=] {
                pcmml::PipelineOptions opt;
                opt.out_dir = *out;
                opt.seed = *seed;
                opt.jobs = *jobs;
                opt.trace_length = *length;
                opt.config_path = opt_path(*config);
                opt.max_epochs = *max_epochs;
                opt.batch_size = *batch;
                opt.log = [](const std::string& line) { std::cerr << line << "\n"; };
                const auto result = pcmml::run_pipeline(opt);
                print_summary(result.report);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: cli: " << e.what() << "\n";
        return 1;
    }

    if (!cmd.run) {
        std::cerr << "error: cli: no subcommand selected\n";
        return 1;
    }
    try {
        cmd.run();
        return 0;
    } catch (const pcmml::DataError& e) {
        std::cerr << "error: " << cmd.stage << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << cmd.stage << ": " << e.what() << "\n";
        return 3;
    }
}
