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

#include "pcmml/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcmml/error.hpp"
#include "pcmml/rng.hpp"
#include "pcmml/textio.hpp"

namespace pcmml {

std::vector<HeadSpec> default_head_specs() {
    std::vector<HeadSpec> specs(3);
    specs[0].head = Head::Energy;
    specs[0].name = "energy";
    specs[0].input_indices = head_feature_indices(Head::Energy);
    specs[0].hidden_widths = {28, 28, 14, 6, 6, 16};
    specs[0].l1 = 0.001;
    specs[0].l2 = 0.001;
    specs[1].head = Head::Latency;
    specs[1].name = "latency";
    specs[1].input_indices = head_feature_indices(Head::Latency);
    specs[1].hidden_widths = {30, 14, 24, 16, 12};
    specs[1].l1 = 0.01;
    specs[1].l2 = 0.001;
    specs[2].head = Head::Endurance;
    specs[2].name = "endurance";
    specs[2].input_indices = head_feature_indices(Head::Endurance);
    specs[2].hidden_widths = {30, 14, 24, 16, 8};
    specs[2].l1 = 0.01;
    specs[2].l2 = 0.001;
    return specs;
}

MlpModel init_model(const std::vector<HeadSpec>& specs, std::uint64_t seed) {
    MlpModel model;
    model.seed = seed;
    model.heads.resize(specs.size());
    for (std::size_t hi = 0; hi < specs.size(); ++hi) {
        const HeadSpec& spec = specs[hi];
        if (spec.input_dim() == 0) {
            throw DataError("init_model: head " + spec.name + " has no input features");
        }
        HeadNet& net = model.heads[hi];
        net.spec = spec;
        SplitMix64 rng(derive_seed(seed, hi));
        std::size_t fan_in = spec.input_dim();
        std::vector<std::size_t> widths = spec.hidden_widths;
        widths.push_back(1);
        net.layers.resize(widths.size());
        for (std::size_t li = 0; li < widths.size(); ++li) {
            const std::size_t fan_out = widths[li];
            Layer& layer = net.layers[li];
            layer.weights = Matrix(fan_out, fan_in);
            layer.bias.assign(fan_out, 0.0);
            const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
            for (double& w : layer.weights.data) {
                w = (2.0 * rng.next_double() - 1.0) * limit;
            }
            fan_in = fan_out;
        }
    }
    return model;
}

namespace {

/// y = W x + b
void affine(const Matrix& w, const double* x, const std::vector<double>& b, double* y) {
    for (std::size_t r = 0; r < w.rows; ++r) {
        double acc = b[r];
        const double* row = w.data.data() + r * w.cols;
        for (std::size_t c = 0; c < w.cols; ++c) acc += row[c] * x[c];
        y[r] = acc;
    }
}

std::size_t max_width(const HeadNet& net) {
    std::size_t m = net.spec.input_dim();
    for (const Layer& l : net.layers) m = std::max(m, l.weights.rows);
    return m;
}

} // namespace

double forward_head(const HeadNet& net, std::span<const double> inputs) {
    if (inputs.size() != net.spec.input_dim()) {
        throw DataError("forward: head " + net.spec.name + " expects " +
                        format_u64(net.spec.input_dim()) + " inputs, got " +
                        format_u64(inputs.size()));
    }
    std::vector<double> a(max_width(net));
    std::vector<double> z(max_width(net));
    std::copy(inputs.begin(), inputs.end(), a.begin());
    for (std::size_t li = 0; li < net.layers.size(); ++li) {
        const Layer& layer = net.layers[li];
        affine(layer.weights, a.data(), layer.bias, z.data());
        const bool hidden = li + 1 < net.layers.size();
        for (std::size_t r = 0; r < layer.weights.rows; ++r) {
            a[r] = hidden ? std::max(z[r], 0.0) : z[r];
        }
    }
    return a[0];
}

std::array<double, 3> forward(const MlpModel& model, std::span<const double> features) {
    if (features.size() != kFeatureDim) {
        throw DataError("forward: expected " + format_u64(kFeatureDim) + " features, got " +
                        format_u64(features.size()));
    }
    std::array<double, 3> out{};
    std::vector<double> gathered;
    for (const HeadNet& net : model.heads) {
        gathered.clear();
        for (std::size_t idx : net.spec.input_indices) gathered.push_back(features[idx]);
        out[static_cast<std::size_t>(net.spec.head)] = forward_head(net, gathered);
    }
    return out;
}

double huber_value(double error, double delta) {
    const double ae = std::fabs(error);
    if (ae <= delta) return 0.5 * error * error;
    return delta * (ae - 0.5 * delta);
}

double huber_grad(double error, double delta) {
    const double ae = std::fabs(error);
    if (ae < delta) return error;
    return error >= 0.0 ? delta : -delta;
}

double huber_data_loss(const MlpModel& model, const std::vector<EncodedRow>& rows,
                       std::span<const std::uint32_t> indices, double delta) {
    if (indices.empty()) throw DataError("loss: empty index set");
    double total = 0.0;
    std::vector<double> gathered;
    for (std::uint32_t idx : indices) {
        const EncodedRow& row = rows.at(idx);
        for (const HeadNet& net : model.heads) {
            gathered.clear();
            for (std::size_t fi : net.spec.input_indices) gathered.push_back(row.features[fi]);
            const double pred = forward_head(net, gathered);
            const double target = row.targets[static_cast<std::size_t>(net.spec.head)];
            total += huber_value(pred - target, delta);
        }
    }
    return total / (static_cast<double>(indices.size()) * static_cast<double>(model.heads.size()));
}

double regularization_penalty(const MlpModel& model) {
    double penalty = 0.0;
    for (const HeadNet& net : model.heads) {
        double abs_sum = 0.0;
        double sq_sum = 0.0;
        for (const Layer& layer : net.layers) {
            for (double w : layer.weights.data) {
                abs_sum += std::fabs(w);
                sq_sum += w * w;
            }
        }
        penalty += net.spec.l1 * abs_sum + net.spec.l2 * sq_sum;
    }
    return penalty;
}

Gradients Gradients::zeros_like(const MlpModel& model) {
    Gradients g;
    g.heads.resize(model.heads.size());
    for (std::size_t hi = 0; hi < model.heads.size(); ++hi) {
        const HeadNet& net = model.heads[hi];
        g.heads[hi].resize(net.layers.size());
        for (std::size_t li = 0; li < net.layers.size(); ++li) {
            g.heads[hi][li].weights = Matrix(net.layers[li].weights.rows,
                                             net.layers[li].weights.cols);
            g.heads[hi][li].bias.assign(net.layers[li].bias.size(), 0.0);
        }
    }
    return g;
}

void backward(const MlpModel& model, const std::vector<EncodedRow>& rows,
              std::span<const std::uint32_t> batch, double delta, Gradients& out) {
    if (batch.empty()) throw DataError("backward: empty batch");
    if (out.heads.size() != model.heads.size()) out = Gradients::zeros_like(model);
    for (auto& head : out.heads) {
        for (auto& layer : head) {
            std::fill(layer.weights.data.begin(), layer.weights.data.end(), 0.0);
            std::fill(layer.bias.begin(), layer.bias.end(), 0.0);
        }
    }
    out.head_loss = {0.0, 0.0, 0.0};

    const double batch_n = static_cast<double>(batch.size());
    const double head_n = static_cast<double>(model.heads.size());
    const double inv_bh = 1.0 / (batch_n * head_n);

    std::vector<double> gathered;
    std::vector<std::vector<double>> acts;  ///< acts[l]: activation entering layer l
    std::vector<std::vector<double>> pre;   ///< pre[l]: pre-activation of layer l
    std::vector<double> delta_cur;
    std::vector<double> delta_prev;

    for (std::size_t hi = 0; hi < model.heads.size(); ++hi) {
        const HeadNet& net = model.heads[hi];
        const std::size_t n_layers = net.layers.size();
        acts.assign(n_layers + 1, {});
        pre.assign(n_layers, {});
        acts[0].resize(net.spec.input_dim());
        for (std::size_t li = 0; li < n_layers; ++li) {
            pre[li].resize(net.layers[li].weights.rows);
            acts[li + 1].resize(net.layers[li].weights.rows);
        }
        const std::size_t widest = max_width(net);
        delta_cur.assign(widest, 0.0);
        delta_prev.assign(widest, 0.0);
        double head_sum = 0.0;

        for (std::uint32_t idx : batch) {
            const EncodedRow& row = rows.at(idx);
            gathered.clear();
            for (std::size_t fi : net.spec.input_indices) gathered.push_back(row.features[fi]);
            std::copy(gathered.begin(), gathered.end(), acts[0].begin());
            for (std::size_t li = 0; li < n_layers; ++li) {
                const Layer& layer = net.layers[li];
                affine(layer.weights, acts[li].data(), layer.bias, pre[li].data());
                const bool hidden = li + 1 < n_layers;
                for (std::size_t r = 0; r < layer.weights.rows; ++r) {
                    acts[li + 1][r] = hidden ? std::max(pre[li][r], 0.0) : pre[li][r];
                }
            }
            const double predicted = acts[n_layers][0];
            const double target = row.targets[static_cast<std::size_t>(net.spec.head)];
            const double err = predicted - target;
            head_sum += huber_value(err, delta);

            delta_cur[0] = huber_grad(err, delta) * inv_bh;
            for (std::size_t li = n_layers; li-- > 0;) {
                const Layer& layer = net.layers[li];
                LayerGrads& lg = out.heads[hi][li];
                const std::vector<double>& in_act = acts[li];
                for (std::size_t r = 0; r < layer.weights.rows; ++r) {
                    const double d = delta_cur[r];
                    lg.bias[r] += d;
                    double* grow = lg.weights.data.data() + r * layer.weights.cols;
                    for (std::size_t c = 0; c < layer.weights.cols; ++c) {
                        grow[c] += d * in_act[c];
                    }
                }
                if (li == 0) break;
                for (std::size_t c = 0; c < layer.weights.cols; ++c) {
                    double acc = 0.0;
                    for (std::size_t r = 0; r < layer.weights.rows; ++r) {
                        acc += layer.weights.data[r * layer.weights.cols + c] * delta_cur[r];
                    }
                    delta_prev[c] = pre[li - 1][c] > 0.0 ? acc : 0.0;
                }
                std::swap(delta_cur, delta_prev);
            }
        }
        out.head_loss[hi] = head_sum / batch_n;
    }
    out.data_loss = 0.0;
    for (std::size_t hi = 0; hi < model.heads.size(); ++hi) out.data_loss += out.head_loss[hi];
    out.data_loss /= head_n;

    const double inv_h = 1.0 / head_n;
    for (std::size_t hi = 0; hi < model.heads.size(); ++hi) {
        const HeadNet& net = model.heads[hi];
        for (std::size_t li = 0; li < net.layers.size(); ++li) {
            const std::vector<double>& w = net.layers[li].weights.data;
            std::vector<double>& g = out.heads[hi][li].weights.data;
            for (std::size_t k = 0; k < w.size(); ++k) {
                const double sign = w[k] > 0.0 ? 1.0 : (w[k] < 0.0 ? -1.0 : 0.0);
                g[k] += (net.spec.l1 * sign + 2.0 * net.spec.l2 * w[k]) * inv_h;
            }
        }
    }
}

void adam_update(std::span<double> params, std::span<const double> grads, std::span<double> m,
                 std::span<double> v, std::uint64_t t, double lr, const AdamConfig& cfg) {
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * grads[i];
        v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * grads[i] * grads[i];
        const double m_hat = m[i] / bc1;
        const double v_hat = v[i] / bc2;
        params[i] -= lr * m_hat / (std::sqrt(v_hat) + cfg.eps);
    }
}

AdamState AdamState::zeros_like(const MlpModel& model) {
    AdamState s;
    s.m = Gradients::zeros_like(model).heads;
    s.v = Gradients::zeros_like(model).heads;
    return s;
}

void adam_step(MlpModel& model, const Gradients& grads, AdamState& state, std::uint64_t t,
               double lr, const AdamConfig& cfg) {
    for (std::size_t hi = 0; hi < model.heads.size(); ++hi) {
        for (std::size_t li = 0; li < model.heads[hi].layers.size(); ++li) {
            Layer& layer = model.heads[hi].layers[li];
            adam_update(layer.weights.data, grads.heads[hi][li].weights.data,
                        state.m[hi][li].weights.data, state.v[hi][li].weights.data, t, lr, cfg);
            adam_update(layer.bias, grads.heads[hi][li].bias, state.m[hi][li].bias,
                        state.v[hi][li].bias, t, lr, cfg);
        }
    }
}

void TrainConfig::validate() const {
    if (batch_size < 1) throw DataError("train: batch_size must be >= 1");
    if (!(lr_factor > 0.0 && lr_factor < 1.0)) {
        throw DataError("train: lr_factor must lie in (0, 1)");
    }
    if (!(lr0 > 0.0) || !(min_lr > 0.0)) throw DataError("train: learning rates must be positive");
    if (!(huber_delta > 0.0)) throw DataError("train: huber_delta must be positive");
    if (max_epochs < 1) throw DataError("train: max_epochs must be >= 1");
}

namespace {

/// Stream tags under cfg.seed: 0..2 initialize the heads, 3 feeds the
/// per-epoch shuffle chain.
constexpr std::uint64_t kShuffleStream = 3;

[[noreturn]] void throw_non_finite(const MlpModel& model, const Gradients& grads,
                                   std::size_t epoch, std::size_t batch_index) {
    std::string head = "unknown";
    for (std::size_t hi = 0; hi < model.heads.size(); ++hi) {
        if (!std::isfinite(grads.head_loss[hi])) {
            head = model.heads[hi].spec.name;
            break;
        }
    }
    throw std::runtime_error("train: non-finite loss at epoch " + format_u64(epoch) + " batch " +
                             format_u64(batch_index) + " head " + head);
}

} // namespace

TrainResult train(const EncodedDataset& ds, const TrainConfig& cfg,
                  const std::vector<HeadSpec>& specs) {
    cfg.validate();
    if (ds.split.train.empty() || ds.split.validation.empty()) {
        throw DataError("train: train and validation splits must be non-empty");
    }
    for (std::uint32_t idx : ds.split.train) {
        if (idx >= ds.rows.size()) throw DataError("train: split index out of range");
    }

    MlpModel model = init_model(specs, cfg.seed);
    Gradients grads = Gradients::zeros_like(model);
    AdamState state = AdamState::zeros_like(model);

    const std::uint64_t shuffle_base = derive_seed(cfg.seed, kShuffleStream);
    const double n_train = static_cast<double>(ds.split.train.size());
    // Every head weighs equally in the objective: the tracked loss is the
    // mean over heads of (batch-mean Huber + that head's weight penalty).
    const double head_n = static_cast<double>(model.heads.size());

    TrainResult result;
    double best_val = std::numeric_limits<double>::infinity();
    std::size_t epochs_since_best = 0;
    std::size_t stagnant_for_lr = 0;
    double lr = cfg.lr0;
    std::uint64_t step = 0;
    std::vector<std::uint32_t> perm(ds.split.train.begin(), ds.split.train.end());

    for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        std::copy(ds.split.train.begin(), ds.split.train.end(), perm.begin());
        SplitMix64 rng(derive_seed(shuffle_base, epoch));
        for (std::size_t i = perm.size() - 1; i > 0; --i) {
            const std::uint64_t j = rng.next_below(i + 1);
            std::swap(perm[i], perm[j]);
        }

        double loss_sum = 0.0;
        std::size_t batch_index = 0;
        for (std::size_t start = 0; start < perm.size(); start += cfg.batch_size, ++batch_index) {
            const std::size_t count = std::min(cfg.batch_size, perm.size() - start);
            const std::span<const std::uint32_t> batch(perm.data() + start, count);
            backward(model, ds.rows, batch, cfg.huber_delta, grads);
            const double batch_loss = grads.data_loss + regularization_penalty(model) / head_n;
            if (!std::isfinite(batch_loss)) throw_non_finite(model, grads, epoch, batch_index);
            loss_sum += batch_loss * static_cast<double>(count);
            ++step;
            adam_step(model, grads, state, step, lr, cfg.adam);
        }

        const double train_loss = loss_sum / n_train;
        const double val_loss = huber_data_loss(model, ds.rows, ds.split.validation,
                                                cfg.huber_delta) +
                                regularization_penalty(model) / head_n;
        if (!std::isfinite(val_loss)) {
            throw std::runtime_error("train: non-finite validation loss at epoch " +
                                     format_u64(epoch));
        }
        result.history.epochs.push_back({epoch, train_loss, val_loss, lr});

        if (val_loss < best_val - cfg.min_improvement) {
            best_val = val_loss;
            result.model = model;
            epochs_since_best = 0;
            stagnant_for_lr = 0;
        } else {
            ++epochs_since_best;
            ++stagnant_for_lr;
        }
        if (epochs_since_best >= cfg.early_stop_patience) break;
        if (stagnant_for_lr >= cfg.lr_patience) {
            lr = std::max(lr * cfg.lr_factor, cfg.min_lr);
            stagnant_for_lr = 0;
        }
    }
    return result;
}

Prediction predict(const MlpModel& model, const Scaler& scaler, const DeviceParams& params,
                   std::uint64_t reads, std::uint64_t writes) {
    std::array<double, kFeatureDim> features{};
    std::size_t pos = 0;
    for (double v : one_hot(params.set_voltage, kSetVoltageLevels, "set_voltage"))
        features[pos++] = v;
    for (double v : one_hot(params.set_pulse_ns, kSetPulseLevelsNs, "set_pulse_ns"))
        features[pos++] = v;
    for (double v : one_hot(params.reset_voltage, kResetVoltageLevels, "reset_voltage"))
        features[pos++] = v;
    for (double v : one_hot(params.reset_pulse_ns, kResetPulseLevelsNs, "reset_pulse_ns"))
        features[pos++] = v;
    features[pos++] = scaler.transform(Scaler::kReads, static_cast<double>(reads));
    features[pos++] = scaler.transform(Scaler::kWrites, static_cast<double>(writes));

    const std::array<double, 3> std_out = forward(model, features);
    Prediction p;
    p.write_energy_pj = scaler.inverse(Scaler::target_column(Head::Energy), std_out[0]);
    p.write_latency_ns = scaler.inverse(Scaler::target_column(Head::Latency), std_out[1]);
    p.endurance_writes = scaler.inverse(Scaler::target_column(Head::Endurance), std_out[2]);
    return p;
}

std::string serialize_model(const MlpModel& model) {
    std::string out = "pcm-mlp v1 seed=";
    out += format_u64(model.seed);
    out.push_back('\n');
    for (const HeadNet& net : model.heads) {
        out += "head ";
        out += net.spec.name;
        out += " layers=";
        out += format_u64(net.layers.size());
        out.push_back('\n');
        for (std::size_t li = 0; li < net.layers.size(); ++li) {
            const Layer& layer = net.layers[li];
            out += "layer ";
            out += format_u64(li);
            out.push_back(' ');
            out += format_u64(layer.weights.rows);
            out.push_back(' ');
            out += format_u64(layer.weights.cols);
            out.push_back('\n');
            for (std::size_t r = 0; r < layer.weights.rows; ++r) {
                for (std::size_t c = 0; c < layer.weights.cols; ++c) {
                    if (c > 0) out.push_back(' ');
                    out += format_double(layer.weights.at(r, c));
                }
                out.push_back('\n');
            }
            for (std::size_t r = 0; r < layer.bias.size(); ++r) {
                if (r > 0) out.push_back(' ');
                out += format_double(layer.bias[r]);
            }
            out.push_back('\n');
        }
    }
    return out;
}

void write_model(const MlpModel& model, const std::filesystem::path& path) {
    write_text_file(path, serialize_model(model));
}

namespace {

std::vector<double> parse_float_line(std::string_view line, std::size_t expected,
                                     const std::string& where) {
    const std::vector<std::string_view> fields = split_fields(line, ' ');
    if (fields.size() != expected) {
        throw DataError(where + ": expected " + format_u64(expected) + " values, found " +
                        format_u64(fields.size()));
    }
    std::vector<double> out(expected);
    for (std::size_t i = 0; i < expected; ++i) out[i] = parse_double(fields[i], where);
    return out;
}

} // namespace

MlpModel parse_model(const std::string& text, const std::string& origin) {
    const std::vector<std::string_view> lines = split_lines(text);
    std::size_t cursor = 0;
    auto next_line = [&](const char* what) -> std::string_view {
        if (cursor >= lines.size()) {
            throw DataError(origin + ": unexpected end of file, expected " + std::string(what));
        }
        return lines[cursor++];
    };
    auto where = [&]() { return origin + " line " + format_u64(cursor); };

    const std::string_view header = next_line("header");
    constexpr std::string_view kPrefix = "pcm-mlp v1 seed=";
    if (!header.starts_with(kPrefix)) {
        throw DataError(origin + ": bad header, expected 'pcm-mlp v1 seed=<u64>'");
    }
    MlpModel model;
    model.seed = parse_u64(header.substr(kPrefix.size()), origin + " header seed");

    const std::vector<HeadSpec> canonical = default_head_specs();
    for (const HeadSpec& spec : canonical) {
        const std::string_view head_line = next_line("head line");
        const std::vector<std::string_view> hf = split_fields(head_line, ' ');
        if (hf.size() != 3 || hf[0] != "head" || hf[1] != spec.name ||
            !hf[2].starts_with("layers=")) {
            throw DataError(where() + ": expected 'head " + spec.name + " layers=<n>'");
        }
        const std::uint64_t n_layers = parse_u64(hf[2].substr(7), where() + " layer count");
        if (n_layers < 1) throw DataError(where() + ": head needs at least one layer");

        HeadNet net;
        net.spec = spec;
        net.spec.hidden_widths.clear();
        std::size_t expect_cols = spec.input_dim();
        for (std::uint64_t li = 0; li < n_layers; ++li) {
            const std::string_view layer_line = next_line("layer line");
            const std::vector<std::string_view> lf = split_fields(layer_line, ' ');
            if (lf.size() != 4 || lf[0] != "layer") {
                throw DataError(where() + ": expected 'layer <i> <rows> <cols>'");
            }
            const std::uint64_t index = parse_u64(lf[1], where() + " layer index");
            const std::uint64_t rows = parse_u64(lf[2], where() + " rows");
            const std::uint64_t cols = parse_u64(lf[3], where() + " cols");
            if (index != li) throw DataError(where() + ": layer index out of order");
            if (cols != expect_cols) {
                throw DataError(where() + ": layer input width " + format_u64(cols) +
                                " does not chain from previous width " +
                                format_u64(expect_cols));
            }
            if (rows < 1) throw DataError(where() + ": layer must have at least one unit");
            if (li + 1 == n_layers && rows != 1) {
                throw DataError(where() + ": output layer of head " + spec.name +
                                " must have exactly 1 unit");
            }
            Layer layer;
            layer.weights = Matrix(rows, cols);
            for (std::uint64_t r = 0; r < rows; ++r) {
                const std::string_view wline = next_line("weight row");
                const std::vector<double> vals = parse_float_line(wline, cols, where());
                std::copy(vals.begin(), vals.end(),
                          layer.weights.data.begin() + static_cast<std::ptrdiff_t>(r * cols));
            }
            const std::string_view bline = next_line("bias row");
            layer.bias = parse_float_line(bline, rows, where());
            if (li + 1 < n_layers) net.spec.hidden_widths.push_back(rows);
            expect_cols = rows;
            net.layers.push_back(std::move(layer));
        }
        model.heads.push_back(std::move(net));
    }
    if (cursor != lines.size()) {
        throw DataError(origin + " line " + format_u64(cursor + 1) + ": trailing content");
    }
    return model;
}

MlpModel load_model(const std::filesystem::path& path) {
    return parse_model(read_text_file(path), path.string());
}

std::string serialize_history(const TrainHistory& history) {
    std::string out(kHistoryHeader);
    out.push_back('\n');
    for (const EpochRecord& e : history.epochs) {
        out += format_u64(e.epoch);
        out.push_back(',');
        out += format_double(e.train_loss);
        out.push_back(',');
        out += format_double(e.val_loss);
        out.push_back(',');
        out += format_double(e.lr);
        out.push_back('\n');
    }
    return out;
}

void write_history(const TrainHistory& history, const std::filesystem::path& path) {
    write_text_file(path, serialize_history(history));
}

TrainHistory load_history(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    const std::vector<std::string_view> lines = split_lines(text);
    if (lines.empty() || lines[0] != kHistoryHeader) {
        throw DataError("history file " + path.string() + ": missing header '" +
                        std::string(kHistoryHeader) + "'");
    }
    TrainHistory history;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::string where = path.string() + " line " + format_u64(li + 1);
        const std::vector<std::string_view> f = split_fields(lines[li], ',');
        if (f.size() != 4) throw DataError(where + ": expected 4 fields");
        EpochRecord rec;
        rec.epoch = parse_u64(f[0], where + " epoch");
        rec.train_loss = parse_double(f[1], where + " train_loss");
        rec.val_loss = parse_double(f[2], where + " val_loss");
        rec.lr = parse_double(f[3], where + " lr");
        history.epochs.push_back(rec);
    }
    if (history.epochs.empty()) throw DataError("history file " + path.string() + ": no rows");
    return history;
}

} // namespace pcmml
