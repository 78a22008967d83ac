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

#ifndef PCMML_MLP_HPP
#define PCMML_MLP_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "pcmml/dataset.hpp"
#include "pcmml/device_params.hpp"

namespace pcmml {

/// Dense row-major matrix, shape out x in for layer weights.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Architecture of one head: which feature indices it reads, its hidden
/// widths, and its weight-penalty coefficients. A 1-unit linear output layer
/// is appended after the listed hidden widths.
struct HeadSpec {
    Head head = Head::Energy;
    std::string name;
    std::vector<std::size_t> input_indices;
    std::vector<std::size_t> hidden_widths;
    double l1 = 0.0;
    double l2 = 0.0;

    std::size_t input_dim() const { return input_indices.size(); }
};

/// The fixed three-head architecture:
///   energy    hidden [28,28,14,6,6,16], l1 0.001, l2 0.001, all 14 inputs
///   latency   hidden [30,14,24,16,12],  l1 0.01,  l2 0.001, 8 inputs
///   endurance hidden [30,14,24,16,8],   l1 0.01,  l2 0.001, 2 inputs
std::vector<HeadSpec> default_head_specs();

struct Layer {
    Matrix weights; ///< out x in
    std::vector<double> bias;
};

struct HeadNet {
    HeadSpec spec;
    std::vector<Layer> layers; ///< hidden layers then the 1-unit output
};

struct MlpModel {
    std::uint64_t seed = 0;
    std::vector<HeadNet> heads; ///< canonical order: energy, latency, endurance
};

/// Weights uniform in +-sqrt(6 / (fan_in + fan_out)) from per-head streams
/// derive_seed(seed, head_index); biases zero. Deterministic per seed.
MlpModel init_model(const std::vector<HeadSpec>& specs, std::uint64_t seed);

/// Rectifier on hidden layers, identity output. `inputs` must already be the
/// head's masked slice (size == spec.input_dim()).
double forward_head(const HeadNet& net, std::span<const double> inputs);

/// Full forward pass over a 14-feature vector; gathers each head's inputs by
/// its mask. Result indexed by Head position (energy, latency, endurance).
std::array<double, 3> forward(const MlpModel& model, std::span<const double> features);

/// Pointwise Huber: 0.5 e^2 for |e| <= delta, else delta (|e| - delta/2).
double huber_value(double error, double delta);
/// d huber / d error; the branch point takes the linear-branch value
/// delta * sign(e) (the quadratic branch agrees there).
double huber_grad(double error, double delta);

/// Mean pointwise Huber over the given rows and all heads (heads weighted
/// equally); no penalty term.
double huber_data_loss(const MlpModel& model, const std::vector<EncodedRow>& rows,
                       std::span<const std::uint32_t> indices, double delta);

/// Sum over weight matrices of l1 * sum|w| + l2 * sum w^2 with each head's
/// coefficients; biases excluded.
double regularization_penalty(const MlpModel& model);

/// Gradient buffers mirroring the model layout.
struct LayerGrads {
    Matrix weights;
    std::vector<double> bias;
};

struct Gradients {
    std::vector<std::vector<LayerGrads>> heads;
    double data_loss = 0.0;               ///< mean Huber over batch and heads
    std::array<double, 3> head_loss{};    ///< per-head batch means

    static Gradients zeros_like(const MlpModel& model);
};

/// Exact gradients of (mean-over-batch-and-heads Huber + regularization
/// penalty) with respect to every weight and bias; accumulation is
/// sequential in index order.
void backward(const MlpModel& model, const std::vector<EncodedRow>& rows,
              std::span<const std::uint32_t> batch, double delta, Gradients& out);

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// One bias-corrected Adam update over a flat parameter block; t is the
/// 1-based step count.
void adam_update(std::span<double> params, std::span<const double> grads, std::span<double> m,
                 std::span<double> v, std::uint64_t t, double lr, const AdamConfig& cfg = {});

struct AdamState {
    std::vector<std::vector<LayerGrads>> m;
    std::vector<std::vector<LayerGrads>> v;

    static AdamState zeros_like(const MlpModel& model);
};

void adam_step(MlpModel& model, const Gradients& grads, AdamState& state, std::uint64_t t,
               double lr, const AdamConfig& cfg = {});

struct TrainConfig {
    std::size_t batch_size = 160;
    double lr0 = 1e-3;
    AdamConfig adam{};
    double huber_delta = 1.0;
    std::size_t max_epochs = 500;
    std::size_t early_stop_patience = 50;
    double lr_factor = 0.5;
    std::size_t lr_patience = 20;
    double min_lr = 1e-5;
    double min_improvement = 1e-12;
    std::uint64_t seed = 0;

    void validate() const; ///< batch_size >= 1; 0 < lr_factor < 1
};

struct EpochRecord {
    std::size_t epoch = 0; ///< 1-based
    double train_loss = 0.0;
    double val_loss = 0.0;
    double lr = 0.0;
};

struct TrainHistory {
    std::vector<EpochRecord> epochs;
};

struct TrainResult {
    MlpModel model; ///< best-validation-loss snapshot
    TrainHistory history;
};

/// Trains with Adam on seeded-shuffled batches (final partial batch kept),
/// reduce-on-plateau lr, early stopping, and best-validation snapshotting.
/// Reported losses include the penalty term. Fully deterministic per
/// cfg.seed. Throws on non-finite loss with (epoch, batch, head).
TrainResult train(const EncodedDataset& ds, const TrainConfig& cfg,
                  const std::vector<HeadSpec>& specs = default_head_specs());

struct Prediction {
    double write_energy_pj = 0.0;
    double write_latency_ns = 0.0;
    double endurance_writes = 0.0;
};

/// Encode (one-hot + scaler) -> forward -> inverse-transform to original
/// units. Off-grid parameters raise the one_hot encoding error.
Prediction predict(const MlpModel& model, const Scaler& scaler, const DeviceParams& params,
                   std::uint64_t reads, std::uint64_t writes);

/// Model file grammar (bit-exact text): `pcm-mlp v1 seed=<u64>`, then per
/// head `head <name> layers=<n>`, per layer `layer <i> <rows> <cols>`
/// followed by <rows> weight lines and one bias line of shortest
/// round-trip floats.
std::string serialize_model(const MlpModel& model);
void write_model(const MlpModel& model, const std::filesystem::path& path);
MlpModel parse_model(const std::string& text, const std::string& origin);
MlpModel load_model(const std::filesystem::path& path);

inline constexpr const char* kHistoryHeader = "epoch,train_loss,val_loss,lr";
std::string serialize_history(const TrainHistory& history);
void write_history(const TrainHistory& history, const std::filesystem::path& path);
TrainHistory load_history(const std::filesystem::path& path);

} // namespace pcmml

#endif // PCMML_MLP_HPP
