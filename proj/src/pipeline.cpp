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

#include "pcmml/pipeline.hpp"

#include <chrono>
#include <iostream>

#include "pcmml/error.hpp"
#include "pcmml/rng.hpp"
#include "pcmml/textio.hpp"

namespace pcmml {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

RunManifest begin_manifest(std::string subcommand, std::uint64_t seed) {
    RunManifest m;
    m.subcommand = std::move(subcommand);
    m.seed = seed;
    m.started_utc = utc_timestamp_now();
    return m;
}

void add_flag(RunManifest& m, const std::string& name, std::string value) {
    m.flags.emplace_back(name, std::move(value));
}

} // namespace

std::vector<CorpusEntry> stage_gen_traces(const GenTracesOptions& opt) {
    const auto start = Clock::now();
    RunManifest manifest = begin_manifest("gen-traces", opt.seed);
    add_flag(manifest, "seed", format_u64(opt.seed));
    add_flag(manifest, "length", format_u64(opt.length));

    std::vector<CorpusEntry> corpus = generate_corpus(opt.seed, opt.length);
    const std::filesystem::path manifest_csv = write_corpus(corpus, opt.out_dir);

    for (const CorpusEntry& entry : corpus) {
        record_file(manifest.outputs, opt.out_dir / (entry.id + ".trace"), opt.out_dir);
    }
    record_file(manifest.outputs, manifest_csv, opt.out_dir);
    manifest.duration_seconds = seconds_since(start);
    write_run_manifest(manifest, opt.out_dir / "gen-traces.manifest.json");
    return corpus;
}

SweepStageResult stage_sweep(const SweepStageOptions& opt) {
    const auto start = Clock::now();
    if (opt.grid != "full") {
        throw DataError("sweep: unknown grid '" + opt.grid + "' (only 'full' is supported)");
    }
    RunManifest manifest = begin_manifest("sweep", opt.seed);
    add_flag(manifest, "seed", format_u64(opt.seed));
    add_flag(manifest, "grid", opt.grid);
    add_flag(manifest, "jobs", format_u64(opt.jobs));

    SimConfig cfg;
    if (opt.config_path) {
        cfg = load_sim_config(*opt.config_path);
        record_file(manifest.inputs, *opt.config_path, opt.out_dir);
    }
    cfg.validate();

    const std::vector<CorpusEntry> corpus = load_corpus(opt.traces_dir);
    record_file(manifest.inputs, opt.traces_dir / "corpus.csv", opt.out_dir);
    for (const CorpusEntry& entry : corpus) {
        record_file(manifest.inputs, opt.traces_dir / (entry.id + ".trace"), opt.out_dir);
    }

    SweepStageResult result;
    result.dataset_path = opt.out_dir / "dataset.csv";
    SweepOptions sweep_opt;
    sweep_opt.base_seed = opt.seed;
    sweep_opt.jobs = opt.jobs;
    result.stats = run_sweep(param_grid(), corpus, cfg, sweep_opt, result.dataset_path,
                             &result.rows);

    record_file(manifest.outputs, result.dataset_path, opt.out_dir);
    manifest.duration_seconds = seconds_since(start);
    write_run_manifest(manifest, opt.out_dir / "sweep.manifest.json");
    return result;
}

PreprocessResult stage_preprocess(const PreprocessOptions& opt) {
    const auto start = Clock::now();
    RunManifest manifest = begin_manifest("preprocess", opt.seed);
    add_flag(manifest, "seed", format_u64(opt.seed));
    record_file(manifest.inputs, opt.dataset_path, opt.out_dir);

    const std::vector<SweepRow> rows = load_dataset(opt.dataset_path);
    const SplitIndices split = split_indices(rows.size(), opt.seed);
    std::vector<std::string> warnings;
    PreprocessResult result;
    result.dataset = encode(rows, split, &warnings);
    for (const std::string& w : warnings) std::cerr << w << "\n";

    result.encoded_path = opt.out_dir / "encoded.csv";
    result.scaler_path = opt.out_dir / "scaler.csv";
    write_encoded(result.dataset, result.encoded_path);
    write_scaler(result.dataset.scaler, result.scaler_path);

    record_file(manifest.outputs, result.encoded_path, opt.out_dir);
    record_file(manifest.outputs, result.scaler_path, opt.out_dir);
    manifest.duration_seconds = seconds_since(start);
    write_run_manifest(manifest, opt.out_dir / "preprocess.manifest.json");
    return result;
}

TrainStageResult stage_train(const TrainStageOptions& opt) {
    const auto start = Clock::now();
    RunManifest manifest = begin_manifest("train", opt.config.seed);
    add_flag(manifest, "seed", format_u64(opt.config.seed));
    add_flag(manifest, "batch-size", format_u64(opt.config.batch_size));
    add_flag(manifest, "max-epochs", format_u64(opt.config.max_epochs));
    record_file(manifest.inputs, opt.encoded_path, opt.out_dir);

    const EncodedDataset ds = load_encoded(opt.encoded_path);
    TrainStageResult result;
    result.result = train(ds, opt.config);
    result.model_path = opt.out_dir / "model.txt";
    result.history_path = opt.out_dir / "history.csv";
    write_model(result.result.model, result.model_path);
    write_history(result.result.history, result.history_path);

    record_file(manifest.outputs, result.model_path, opt.out_dir);
    record_file(manifest.outputs, result.history_path, opt.out_dir);
    manifest.duration_seconds = seconds_since(start);
    write_run_manifest(manifest, opt.out_dir / "train.manifest.json");
    return result;
}

EvaluateStageResult stage_evaluate(const EvaluateStageOptions& opt) {
    const auto start = Clock::now();
    RunManifest manifest = begin_manifest("evaluate", 0);
    record_file(manifest.inputs, opt.encoded_path, opt.out_dir);
    record_file(manifest.inputs, opt.scaler_path, opt.out_dir);
    record_file(manifest.inputs, opt.model_path, opt.out_dir);

    const EncodedDataset ds = load_encoded(opt.encoded_path);
    const Scaler scaler = load_scaler(opt.scaler_path);
    const MlpModel model = load_model(opt.model_path);

    EvaluateStageResult result;
    result.report = evaluate(model, ds, scaler);
    if (opt.history_path) {
        record_file(manifest.inputs, *opt.history_path, opt.out_dir);
        std::error_code ec;
        const std::filesystem::path rel =
            std::filesystem::relative(*opt.history_path, opt.out_dir, ec);
        result.report.history_ref = (ec || rel.empty() ? *opt.history_path : rel).generic_string();
    }
    write_eval_report(result.report, opt.out_dir);
    result.summary_path = opt.out_dir / "summary.csv";

    record_file(manifest.outputs, result.summary_path, opt.out_dir);
    for (Head h : kHeads) {
        record_file(manifest.outputs,
                    opt.out_dir / (std::string("regression_") + head_name(h) + ".csv"),
                    opt.out_dir);
    }
    manifest.duration_seconds = seconds_since(start);
    write_run_manifest(manifest, opt.out_dir / "evaluate.manifest.json");
    return result;
}

PipelineResult run_pipeline(const PipelineOptions& opt) {
    const auto start = Clock::now();
    if (opt.out_dir.empty()) throw DataError("pipeline: output directory is required");
    const auto log = [&](const std::string& line) {
        if (opt.log) opt.log(line);
    };

    PipelineResult result;
    result.traces_dir = opt.out_dir / "traces";
    result.eval_dir = opt.out_dir / "eval";

    log("stage gen-traces");
    GenTracesOptions gen;
    gen.out_dir = result.traces_dir;
    gen.seed = derive_seed(opt.seed, kStageSeedGenTraces);
    gen.length = opt.trace_length;
    stage_gen_traces(gen);

    log("stage sweep");
    SweepStageOptions sweep;
    sweep.traces_dir = result.traces_dir;
    sweep.out_dir = opt.out_dir;
    sweep.config_path = opt.config_path;
    sweep.seed = derive_seed(opt.seed, kStageSeedSweep);
    sweep.jobs = opt.jobs;
    SweepStageResult sweep_result = stage_sweep(sweep);
    result.dataset_path = sweep_result.dataset_path;
    result.sweep_stats = sweep_result.stats;

    log("stage preprocess");
    PreprocessOptions pre;
    pre.dataset_path = result.dataset_path;
    pre.out_dir = opt.out_dir;
    pre.seed = derive_seed(opt.seed, kStageSeedSplit);
    PreprocessResult pre_result = stage_preprocess(pre);
    result.encoded_path = pre_result.encoded_path;
    result.scaler_path = pre_result.scaler_path;

    log("stage train");
    TrainStageOptions train_opt;
    train_opt.encoded_path = result.encoded_path;
    train_opt.out_dir = opt.out_dir;
    train_opt.config.seed = derive_seed(opt.seed, kStageSeedTrain);
    train_opt.config.max_epochs = opt.max_epochs;
    train_opt.config.batch_size = opt.batch_size;
    TrainStageResult train_result = stage_train(train_opt);
    result.model_path = train_result.model_path;
    result.history_path = train_result.history_path;
    result.history = train_result.result.history;

    log("stage evaluate");
    EvaluateStageOptions eval_opt;
    eval_opt.encoded_path = result.encoded_path;
    eval_opt.scaler_path = result.scaler_path;
    eval_opt.model_path = result.model_path;
    eval_opt.history_path = result.history_path;
    eval_opt.out_dir = result.eval_dir;
    EvaluateStageResult eval_result = stage_evaluate(eval_opt);
    result.report = eval_result.report;

    RunManifest manifest = begin_manifest("pipeline", opt.seed);
    add_flag(manifest, "seed", format_u64(opt.seed));
    add_flag(manifest, "jobs", format_u64(opt.jobs));
    add_flag(manifest, "length", format_u64(opt.trace_length));
    add_flag(manifest, "max-epochs", format_u64(opt.max_epochs));
    add_flag(manifest, "batch-size", format_u64(opt.batch_size));
    record_file(manifest.outputs, result.traces_dir / "corpus.csv", opt.out_dir);
    record_file(manifest.outputs, result.dataset_path, opt.out_dir);
    record_file(manifest.outputs, result.encoded_path, opt.out_dir);
    record_file(manifest.outputs, result.scaler_path, opt.out_dir);
    record_file(manifest.outputs, result.model_path, opt.out_dir);
    record_file(manifest.outputs, result.history_path, opt.out_dir);
    record_file(manifest.outputs, eval_result.summary_path, opt.out_dir);
    manifest.duration_seconds = seconds_since(start);
    write_run_manifest(manifest, opt.out_dir / "pipeline.manifest.json");
    log("pipeline complete");
    return result;
}

} // namespace pcmml
