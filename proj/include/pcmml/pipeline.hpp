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

#ifndef PCMML_PIPELINE_HPP
#define PCMML_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pcmml/eval.hpp"
#include "pcmml/manifest.hpp"
#include "pcmml/mlp.hpp"
#include "pcmml/sweep.hpp"

namespace pcmml {

/// Stage seeds under one pipeline base seed: derive_seed(base, tag).
inline constexpr std::uint64_t kStageSeedGenTraces = 0;
inline constexpr std::uint64_t kStageSeedSweep = 1;
inline constexpr std::uint64_t kStageSeedSplit = 2;
inline constexpr std::uint64_t kStageSeedTrain = 3;

using StageLog = std::function<void(const std::string&)>;

struct GenTracesOptions {
    std::filesystem::path out_dir;
    std::uint64_t seed = 42;
    std::uint64_t length = kDefaultTraceLength;
};

/// Writes one .trace per corpus entry, corpus.csv, and
/// gen-traces.manifest.json into out_dir.
std::vector<CorpusEntry> stage_gen_traces(const GenTracesOptions& opt);

struct SweepStageOptions {
    std::filesystem::path traces_dir;
    std::filesystem::path out_dir; ///< receives dataset.csv + sweep.manifest.json
    std::optional<std::filesystem::path> config_path;
    std::string grid = "full";
    std::uint64_t seed = 42;
    unsigned jobs = 1;
};

struct SweepStageResult {
    std::vector<SweepRow> rows;
    SweepStats stats;
    std::filesystem::path dataset_path;
};

SweepStageResult stage_sweep(const SweepStageOptions& opt);

struct PreprocessOptions {
    std::filesystem::path dataset_path;
    std::filesystem::path out_dir; ///< receives encoded.csv, scaler.csv, manifest
    std::uint64_t seed = 42;
};

struct PreprocessResult {
    EncodedDataset dataset;
    std::filesystem::path encoded_path;
    std::filesystem::path scaler_path;
};

PreprocessResult stage_preprocess(const PreprocessOptions& opt);

struct TrainStageOptions {
    std::filesystem::path encoded_path;
    std::filesystem::path out_dir; ///< receives model.txt, history.csv, manifest
    TrainConfig config;
};

struct TrainStageResult {
    TrainResult result;
    std::filesystem::path model_path;
    std::filesystem::path history_path;
};

TrainStageResult stage_train(const TrainStageOptions& opt);

struct EvaluateStageOptions {
    std::filesystem::path encoded_path;
    std::filesystem::path scaler_path;
    std::filesystem::path model_path;
    std::optional<std::filesystem::path> history_path;
    std::filesystem::path out_dir; ///< receives summary.csv, regression_*.csv, manifest
};

struct EvaluateStageResult {
    EvalReport report;
    std::filesystem::path summary_path;
};

EvaluateStageResult stage_evaluate(const EvaluateStageOptions& opt);

struct PipelineOptions {
    std::filesystem::path out_dir;
    std::uint64_t seed = 42;
    unsigned jobs = 1;
    std::uint64_t trace_length = kDefaultTraceLength;
    std::optional<std::filesystem::path> config_path;
    std::size_t max_epochs = TrainConfig{}.max_epochs;
    std::size_t batch_size = TrainConfig{}.batch_size;
    StageLog log; ///< optional progress sink
};

struct PipelineResult {
    std::filesystem::path traces_dir;
    std::filesystem::path dataset_path;
    std::filesystem::path encoded_path;
    std::filesystem::path scaler_path;
    std::filesystem::path model_path;
    std::filesystem::path history_path;
    std::filesystem::path eval_dir;
    SweepStats sweep_stats;
    TrainHistory history;
    EvalReport report;
};

/// gen-traces -> sweep -> preprocess -> train -> evaluate with file-based
/// handoff and per-stage seeds derived from opt.seed. Fully deterministic
/// apart from manifest timestamps/durations.
PipelineResult run_pipeline(const PipelineOptions& opt);

} // namespace pcmml

#endif // PCMML_PIPELINE_HPP
