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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <doctest.h>

#include "pcmml/dataset.hpp"
#include "pcmml/error.hpp"
#include "pcmml/mlp.hpp"
#include "pcmml/rng.hpp"
#include "pcmml/textio.hpp"

using namespace pcmml;

namespace {

std::filesystem::path temp_dir(const char* name) {
    auto dir = std::filesystem::temp_directory_path() / "pcmml_mlp_tests" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

void zero_weights(MlpModel& model) {
    for (HeadNet& net : model.heads)
        for (Layer& layer : net.layers)
            std::fill(layer.weights.data.begin(), layer.weights.data.end(), 0.0);
}

/// A single linear unit y = w x + b over one feature index.
HeadSpec linear_spec(Head head, const char* name, std::size_t feature, double l1 = 0.0,
                     double l2 = 0.0) {
    HeadSpec spec;
    spec.head = head;
    spec.name = name;
    spec.input_indices = {feature};
    spec.hidden_widths = {};
    spec.l1 = l1;
    spec.l2 = l2;
    return spec;
}

std::vector<SweepRow> synthetic_rows(std::size_t count) {
    const auto grid = param_grid();
    std::vector<SweepRow> rows(count);
    for (std::size_t i = 0; i < count; ++i) {
        SweepRow& r = rows[i];
        r.row_id = i;
        r.params = grid[(i * 11) % grid.size()];
        r.trace_id = "trace_" + format_u64(i);
        r.reads = 1000 + 37 * i;
        r.writes = 400 + 53 * ((i * i) % 17);
        r.total_write_energy_pj = 5.0e5 + 917.0 * static_cast<double>((i * 13) % 23);
        r.total_energy_pj = r.total_write_energy_pj + 100.0;
        r.total_write_latency_ns = 1.0e5 + 250.0 * static_cast<double>((i * 7) % 11);
        r.total_latency_ns = r.total_write_latency_ns + 50.0;
        r.endurance_per_bank = 1.0e6 - 17.0 * static_cast<double>((i * 5) % 19);
        r.failed = false;
    }
    return rows;
}

EncodedDataset synthetic_encoded(std::size_t count, std::uint64_t seed) {
    const auto rows = synthetic_rows(count);
    return encode(rows, split_indices(rows.size(), seed));
}

double full_loss(const MlpModel& model, const std::vector<EncodedRow>& rows,
                 std::span<const std::uint32_t> indices, double delta) {
    return huber_data_loss(model, rows, indices, delta) +
           regularization_penalty(model) / static_cast<double>(model.heads.size());
}

/// Central finite differences of the full loss against backward()'s
/// analytic gradients, parameter by parameter.
void check_gradients(MlpModel& model, const std::vector<EncodedRow>& rows,
                     const std::vector<std::uint32_t>& indices, double delta) {
    // Keep weights away from the |w| = 0 kink of the L1 term, where a
    // two-sided difference of |w| is an artifact of the probe, not a
    // statement about the gradient.
    for (HeadNet& net : model.heads)
        for (Layer& layer : net.layers)
            for (double& w : layer.weights.data)
                if (std::fabs(w) < 1e-4) w = w < 0.0 ? -1e-4 : 1e-4;

    Gradients grads = Gradients::zeros_like(model);
    backward(model, rows, indices, delta, grads);

    const double h = 1e-5;
    auto check_param = [&](double& param, double analytic) {
        const double saved = param;
        param = saved + h;
        const double up = full_loss(model, rows, indices, delta);
        param = saved - h;
        const double down = full_loss(model, rows, indices, delta);
        param = saved;
        const double numeric = (up - down) / (2.0 * h);
        const double tol = std::max(1e-6, 1e-4 * std::fabs(numeric));
        CHECK(std::fabs(analytic - numeric) <= tol);
    };

    for (std::size_t hi = 0; hi < model.heads.size(); ++hi) {
        for (std::size_t li = 0; li < model.heads[hi].layers.size(); ++li) {
            Layer& layer = model.heads[hi].layers[li];
            for (std::size_t k = 0; k < layer.weights.data.size(); ++k)
                check_param(layer.weights.data[k], grads.heads[hi][li].weights.data[k]);
            for (std::size_t k = 0; k < layer.bias.size(); ++k)
                check_param(layer.bias[k], grads.heads[hi][li].bias[k]);
        }
    }
}

} // namespace

TEST_SUITE_BEGIN("mlp");

TEST_CASE("the default architecture matches the published table") {
    const auto specs = default_head_specs();
    REQUIRE(specs.size() == 3);
    CHECK(specs[0].head == Head::Energy);
    CHECK(specs[0].name == "energy");
    CHECK(specs[0].input_indices == head_feature_indices(Head::Energy));
    CHECK(specs[0].hidden_widths == std::vector<std::size_t>{28, 28, 14, 6, 6, 16});
    CHECK(specs[0].l1 == 0.001);
    CHECK(specs[0].l2 == 0.001);

    CHECK(specs[1].head == Head::Latency);
    CHECK(specs[1].hidden_widths == std::vector<std::size_t>{30, 14, 24, 16, 12});
    CHECK(specs[1].l1 == 0.01);
    CHECK(specs[1].l2 == 0.001);
    CHECK(specs[1].input_dim() == 8);

    CHECK(specs[2].head == Head::Endurance);
    CHECK(specs[2].hidden_widths == std::vector<std::size_t>{30, 14, 24, 16, 8});
    CHECK(specs[2].l1 == 0.01);
    CHECK(specs[2].l2 == 0.001);
    CHECK(specs[2].input_dim() == 2);
}

TEST_CASE("initialization produces the documented layer shapes") {
    const MlpModel model = init_model(default_head_specs(), 1);
    REQUIRE(model.heads.size() == 3);

    const auto shape_of = [](const HeadNet& net) {
        std::vector<std::pair<std::size_t, std::size_t>> shapes;
        for (const Layer& l : net.layers) shapes.emplace_back(l.weights.rows, l.weights.cols);
        return shapes;
    };
    using Shapes = std::vector<std::pair<std::size_t, std::size_t>>;
    CHECK(shape_of(model.heads[0]) ==
          Shapes{{28, 14}, {28, 28}, {14, 28}, {6, 14}, {6, 6}, {16, 6}, {1, 16}});
    CHECK(shape_of(model.heads[1]) ==
          Shapes{{30, 8}, {14, 30}, {24, 14}, {16, 24}, {12, 16}, {1, 12}});
    CHECK(shape_of(model.heads[2]) ==
          Shapes{{30, 2}, {14, 30}, {24, 14}, {16, 24}, {8, 16}, {1, 8}});
}

TEST_CASE("initialization is seeded, bounded, and zero-biased") {
    const MlpModel a = init_model(default_head_specs(), 42);
    const MlpModel b = init_model(default_head_specs(), 42);
    const MlpModel c = init_model(default_head_specs(), 43);
    CHECK(serialize_model(a) == serialize_model(b));
    CHECK(serialize_model(a) != serialize_model(c));

    for (const HeadNet& net : a.heads) {
        std::size_t fan_in = net.spec.input_dim();
        for (const Layer& layer : net.layers) {
            const double limit =
                std::sqrt(6.0 / static_cast<double>(fan_in + layer.weights.rows));
            double min_w = 1.0;
            double max_w = -1.0;
            for (double w : layer.weights.data) {
                CHECK(std::fabs(w) <= limit);
                min_w = std::min(min_w, w);
                max_w = std::max(max_w, w);
            }
            if (layer.weights.data.size() >= 14) {
                CHECK(min_w < 0.0);
                CHECK(max_w > 0.0);
            }
            for (double bias : layer.bias) CHECK(bias == 0.0);
            fan_in = layer.weights.rows;
        }
    }
}

TEST_CASE("a zeroed network predicts zero everywhere") {
    MlpModel model = init_model(default_head_specs(), 7);
    zero_weights(model);
    const std::vector<double> features(kFeatureDim, 1.0);
    const auto out = forward(model, features);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 0.0);
    CHECK(out[2] == 0.0);
}

TEST_CASE("a degenerate single-layer head is an exact affine map") {
    const std::vector<HeadSpec> specs{linear_spec(Head::Energy, "energy", 0)};
    MlpModel model = init_model(specs, 0);
    model.heads[0].layers[0].weights.at(0, 0) = 2.5;
    model.heads[0].layers[0].bias[0] = -1.0;
    const std::vector<double> input{3.0};
    CHECK(forward_head(model.heads[0], input) == 2.5 * 3.0 - 1.0);
}

TEST_CASE("hidden layers apply the rectifier") {
    HeadSpec spec = linear_spec(Head::Energy, "energy", 0);
    spec.hidden_widths = {1};
    MlpModel model = init_model({spec}, 0);
    model.heads[0].layers[0].weights.at(0, 0) = 1.0;
    model.heads[0].layers[0].bias[0] = 0.0;
    model.heads[0].layers[1].weights.at(0, 0) = 1.0;
    model.heads[0].layers[1].bias[0] = 0.5;

    const std::vector<double> positive{2.0};
    const std::vector<double> negative{-3.0};
    CHECK(forward_head(model.heads[0], positive) == 2.5);
    CHECK(forward_head(model.heads[0], negative) == 0.5);
}

TEST_CASE("each head only sees its masked features") {
    const MlpModel model = init_model(default_head_specs(), 21);
    std::vector<double> features(kFeatureDim, 0.5);
    const auto base = forward(model, features);

    features[0] = 9.0; // set-voltage one-hot: energy only
    auto out = forward(model, features);
    CHECK(out[0] != base[0]);
    CHECK(out[1] == base[1]);
    CHECK(out[2] == base[2]);

    features[0] = 0.5;
    features[3] = 9.0; // set-pulse one-hot: energy and latency
    out = forward(model, features);
    CHECK(out[0] != base[0]);
    CHECK(out[1] != base[1]);
    CHECK(out[2] == base[2]);

    features[3] = 0.5;
    features[12] = 9.0; // reads: every head
    out = forward(model, features);
    CHECK(out[0] != base[0]);
    CHECK(out[1] != base[1]);
    CHECK(out[2] != base[2]);
}

TEST_CASE("forward rejects wrong input sizes") {
    const MlpModel model = init_model(default_head_specs(), 3);
    const std::vector<double> short_vec(5, 0.0);
    CHECK_THROWS_AS(forward(model, short_vec), DataError);
    CHECK_THROWS_AS(forward_head(model.heads[0], short_vec), DataError);
}

TEST_CASE("huber value and gradient match the hand values") {
    CHECK(huber_value(0.5, 1.0) == 0.125);
    CHECK(huber_value(-0.5, 1.0) == 0.125);
    CHECK(huber_value(2.0, 1.0) == 1.5);
    CHECK(huber_value(-2.0, 1.0) == 1.5);
    CHECK(huber_value(0.0, 1.0) == 0.0);
    CHECK(huber_value(1.0, 1.0) == 0.5); // both branches agree at the joint

    CHECK(huber_grad(0.5, 1.0) == 0.5);
    CHECK(huber_grad(-0.5, 1.0) == -0.5);
    CHECK(huber_grad(2.0, 1.0) == 1.0);
    CHECK(huber_grad(-2.0, 1.0) == -1.0);
    CHECK(huber_grad(1.0, 1.0) == 1.0);
    CHECK(huber_grad(-1.0, 1.0) == -1.0);

    // C1 continuity across the joint.
    const double eps = 1e-9;
    CHECK(std::fabs(huber_value(1.0 + eps, 1.0) - huber_value(1.0 - eps, 1.0)) < 1e-8);
    CHECK(std::fabs(huber_grad(1.0 + eps, 1.0) - huber_grad(1.0 - eps, 1.0)) < 1e-8);
}

TEST_CASE("the weight penalty matches the hand value and skips biases") {
    const std::vector<HeadSpec> specs{
        {Head::Energy, "energy", {12, 13}, {}, 0.01, 0.001}};
    MlpModel model = init_model(specs, 0);
    model.heads[0].layers[0].weights.at(0, 0) = 1.0;
    model.heads[0].layers[0].weights.at(0, 1) = -2.0;
    model.heads[0].layers[0].bias[0] = 100.0;
    // 0.01 * (1 + 2) + 0.001 * (1 + 4)
    CHECK(std::fabs(regularization_penalty(model) - 0.035) < 1e-15);

    zero_weights(model);
    CHECK(regularization_penalty(model) == 0.0);

    // Scaling every weight coefficient pair scales the penalty linearly.
    MlpModel doubled = model;
    doubled.heads[0].layers[0].weights.at(0, 0) = 1.0;
    doubled.heads[0].layers[0].weights.at(0, 1) = -2.0;
    doubled.heads[0].spec.l1 = 0.02;
    doubled.heads[0].spec.l2 = 0.002;
    CHECK(std::fabs(regularization_penalty(doubled) - 0.07) < 1e-15);
}

TEST_CASE("the data loss averages over rows and heads") {
    MlpModel model = init_model(default_head_specs(), 5);
    zero_weights(model);

    std::vector<EncodedRow> rows(2);
    rows[0].targets = {1.0, -2.0, 0.5};
    rows[1].targets = {0.0, 3.0, -0.5};
    const std::vector<std::uint32_t> indices{0, 1};

    double expected = 0.0;
    for (const EncodedRow& row : rows)
        for (double t : row.targets) expected += huber_value(0.0 - t, 1.0);
    expected /= 2.0 * 3.0;
    CHECK(huber_data_loss(model, rows, indices, 1.0) == doctest::Approx(expected).epsilon(1e-15));
    CHECK_THROWS_AS(huber_data_loss(model, rows, {}, 1.0), DataError);
}

TEST_CASE("backward reports per-head and combined batch losses") {
    MlpModel model = init_model(default_head_specs(), 6);
    std::vector<EncodedRow> rows(3);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t f = 0; f < kFeatureDim; ++f)
            rows[i].features[f] = 0.1 * static_cast<double>(i + f);
        rows[i].targets = {0.5, -0.25, static_cast<double>(i)};
    }
    const std::vector<std::uint32_t> batch{0, 1, 2};
    Gradients grads = Gradients::zeros_like(model);
    backward(model, rows, batch, 1.0, grads);

    CHECK(grads.data_loss ==
          doctest::Approx((grads.head_loss[0] + grads.head_loss[1] + grads.head_loss[2]) / 3.0)
              .epsilon(1e-15));
    CHECK(grads.data_loss == doctest::Approx(huber_data_loss(model, rows, batch, 1.0))
                                 .epsilon(1e-12));
}

TEST_CASE("analytic gradients match finite differences on a deep head") {
    HeadSpec spec{Head::Energy, "energy", {0, 1, 2}, {3, 3}, 0.001, 0.001};
    MlpModel model = init_model({spec}, 11);

    std::vector<EncodedRow> rows(4);
    SplitMix64 rng(99);
    for (EncodedRow& row : rows) {
        for (double& f : row.features) f = 2.0 * rng.next_double() - 1.0;
        for (double& t : row.targets) t = 2.0 * rng.next_double() - 1.0;
    }
    check_gradients(model, rows, {0, 1, 2, 3}, 1.0);
}

TEST_CASE("analytic gradients match finite differences across random nets") {
    SplitMix64 seed_rng(2718);
    for (int trial = 0; trial < 5; ++trial) {
        HeadSpec spec{Head::Latency, "latency", {0, 1}, {}, 0.01, 0.001};
        spec.hidden_widths = trial % 2 == 0 ? std::vector<std::size_t>{4}
                                            : std::vector<std::size_t>{5, 3};
        MlpModel model = init_model({spec}, seed_rng.next());

        std::vector<EncodedRow> rows(3);
        for (EncodedRow& row : rows) {
            for (double& f : row.features) f = 2.0 * seed_rng.next_double() - 1.0;
            for (double& t : row.targets) t = 3.0 * (2.0 * seed_rng.next_double() - 1.0);
        }
        check_gradients(model, rows, {0, 1, 2}, 1.0);
    }
}

TEST_CASE("analytic gradients match finite differences on a multi-head model") {
    std::vector<HeadSpec> specs{{Head::Energy, "energy", {0, 1, 2}, {4}, 0.001, 0.001},
                                {Head::Latency, "latency", {1, 3}, {3, 3}, 0.01, 0.001},
                                {Head::Endurance, "endurance", {2}, {5}, 0.01, 0.001}};
    MlpModel model = init_model(specs, 20);

    std::vector<EncodedRow> rows(4);
    SplitMix64 rng(550);
    for (EncodedRow& row : rows) {
        for (double& f : row.features) f = 2.0 * rng.next_double() - 1.0;
        for (double& t : row.targets) t = 2.0 * rng.next_double() - 1.0;
    }
    check_gradients(model, rows, {0, 1, 2, 3}, 1.0);
}

TEST_CASE("a perfect prediction with zero weights has zero gradient") {
    const std::vector<HeadSpec> specs{
        {Head::Energy, "energy", {0, 1}, {2}, 0.01, 0.001}};
    MlpModel model = init_model(specs, 4);
    zero_weights(model);

    std::vector<EncodedRow> rows(2);
    rows[0].features[0] = 1.0;
    rows[1].features[1] = -1.0; // targets stay 0 == prediction
    const std::vector<std::uint32_t> batch{0, 1};
    Gradients grads = Gradients::zeros_like(model);
    backward(model, rows, batch, 1.0, grads);

    CHECK(grads.data_loss == 0.0);
    for (const auto& head : grads.heads)
        for (const auto& layer : head) {
            for (double g : layer.weights.data) CHECK(g == 0.0);
            for (double g : layer.bias) CHECK(g == 0.0);
        }
}

TEST_CASE("gradients do not flow through dead rectifier units") {
    HeadSpec spec = linear_spec(Head::Energy, "energy", 0);
    spec.hidden_widths = {1};
    MlpModel model = init_model({spec}, 0);
    model.heads[0].layers[0].weights.at(0, 0) = -5.0; // dead for positive inputs
    model.heads[0].layers[0].bias[0] = 0.0;
    model.heads[0].layers[1].weights.at(0, 0) = 1.0;
    model.heads[0].layers[1].bias[0] = 0.0;

    std::vector<EncodedRow> rows(1);
    rows[0].features[0] = 2.0;
    rows[0].targets[0] = 0.5; // prediction is 0, so the output error is nonzero
    Gradients grads = Gradients::zeros_like(model);
    backward(model, rows, std::vector<std::uint32_t>{0}, 1.0, grads);

    CHECK(grads.heads[0][0].weights.at(0, 0) == 0.0);
    CHECK(grads.heads[0][0].bias[0] == 0.0);
    CHECK(grads.heads[0][1].weights.at(0, 0) == 0.0); // dead unit activation is 0
    CHECK(grads.heads[0][1].bias[0] != 0.0);
}

TEST_CASE("the first adam step moves by almost exactly the learning rate") {
    std::vector<double> params{0.0};
    std::vector<double> grads{1.0};
    std::vector<double> m{0.0};
    std::vector<double> v{0.0};
    adam_update(params, grads, m, v, 1, 1e-3);

    // -lr * g / (|g| + eps) at t = 1: for a unit gradient, -lr / (1 + 1e-8).
    CHECK(std::fabs(params[0] + 0.00099999999) <= 1e-9 * 1e-3);

    std::vector<double> params_half{0.0};
    std::vector<double> grads_half{0.5};
    std::vector<double> m_half{0.0};
    std::vector<double> v_half{0.0};
    adam_update(params_half, grads_half, m_half, v_half, 1, 1e-3);
    const double expected = -1e-3 * 0.5 / (0.5 + 1e-8);
    CHECK(std::fabs(params_half[0] - expected) <= 1e-9 * std::fabs(expected));
}

TEST_CASE("adam leaves parameters alone when the gradient is zero") {
    std::vector<double> params{1.25, -3.5};
    std::vector<double> grads{0.0, 0.0};
    std::vector<double> m{0.0, 0.0};
    std::vector<double> v{0.0, 0.0};
    adam_update(params, grads, m, v, 1, 1e-3);
    CHECK(params == std::vector<double>{1.25, -3.5});
}

TEST_CASE("adam updates blocks elementwise") {
    std::vector<double> params{0.1, 0.2};
    std::vector<double> grads{0.4, -0.7};
    std::vector<double> m{0.0, 0.0};
    std::vector<double> v{0.0, 0.0};
    adam_update(params, grads, m, v, 1, 1e-3);
    adam_update(params, grads, m, v, 2, 1e-3);

    for (std::size_t i = 0; i < 2; ++i) {
        std::vector<double> p{i == 0 ? 0.1 : 0.2};
        std::vector<double> g{grads[i]};
        std::vector<double> mm{0.0};
        std::vector<double> vv{0.0};
        adam_update(p, g, mm, vv, 1, 1e-3);
        adam_update(p, g, mm, vv, 2, 1e-3);
        CHECK(p[0] == params[i]);
        CHECK(mm[0] == m[i]);
        CHECK(vv[0] == v[i]);
    }
}

TEST_CASE("adam_step matches flat adam_update on every block") {
    const std::vector<HeadSpec> specs{
        {Head::Energy, "energy", {0, 1, 2}, {2}, 0.0, 0.0}};
    MlpModel model = init_model(specs, 15);
    MlpModel mirror = model;

    Gradients grads = Gradients::zeros_like(model);
    SplitMix64 rng(5);
    for (auto& head : grads.heads)
        for (auto& layer : head) {
            for (double& g : layer.weights.data) g = 2.0 * rng.next_double() - 1.0;
            for (double& g : layer.bias) g = 2.0 * rng.next_double() - 1.0;
        }

    AdamState state = AdamState::zeros_like(model);
    adam_step(model, grads, state, 1, 1e-3);

    AdamState mirror_state = AdamState::zeros_like(mirror);
    for (std::size_t li = 0; li < mirror.heads[0].layers.size(); ++li) {
        adam_update(mirror.heads[0].layers[li].weights.data, grads.heads[0][li].weights.data,
                    mirror_state.m[0][li].weights.data, mirror_state.v[0][li].weights.data, 1,
                    1e-3);
        adam_update(mirror.heads[0].layers[li].bias, grads.heads[0][li].bias,
                    mirror_state.m[0][li].bias, mirror_state.v[0][li].bias, 1, 1e-3);
    }
    CHECK(serialize_model(model) == serialize_model(mirror));
}

TEST_CASE("training is deterministic per seed") {
    const EncodedDataset ds = synthetic_encoded(20, 3);
    TrainConfig cfg;
    cfg.max_epochs = 5;
    cfg.seed = 42;
    const TrainResult a = train(ds, cfg);
    const TrainResult b = train(ds, cfg);
    CHECK(serialize_model(a.model) == serialize_model(b.model));
    CHECK(serialize_history(a.history) == serialize_history(b.history));

    cfg.seed = 43;
    const TrainResult c = train(ds, cfg);
    CHECK(serialize_model(a.model) != serialize_model(c.model));
}

TEST_CASE("training reduces the loss by 10x on a learnable problem") {
    const EncodedDataset ds = synthetic_encoded(10, 1);
    std::vector<HeadSpec> specs{
        {Head::Energy, "energy", head_feature_indices(Head::Energy), {8}, 0.0, 0.0},
        {Head::Latency, "latency", head_feature_indices(Head::Latency), {8}, 0.0, 0.0},
        {Head::Endurance, "endurance", head_feature_indices(Head::Endurance), {8}, 0.0, 0.0}};

    TrainConfig cfg;
    cfg.batch_size = ds.split.train.size(); // full batch: one step per epoch
    cfg.lr0 = 1e-2;
    cfg.max_epochs = 200;
    cfg.early_stop_patience = 200;
    cfg.lr_patience = 200;
    cfg.seed = 7;
    const TrainResult result = train(ds, cfg, specs);

    REQUIRE(!result.history.epochs.empty());
    const double initial = result.history.epochs.front().train_loss;
    const double final_loss = result.history.epochs.back().train_loss;
    CHECK(final_loss < 0.1 * initial);
}

TEST_CASE("the returned model is the best validation snapshot") {
    const EncodedDataset ds = synthetic_encoded(25, 9);
    TrainConfig cfg;
    cfg.max_epochs = 30;
    cfg.seed = 11;
    const TrainResult result = train(ds, cfg);

    double min_val = std::numeric_limits<double>::infinity();
    for (const EpochRecord& e : result.history.epochs) min_val = std::min(min_val, e.val_loss);

    const double snapshot_val =
        huber_data_loss(result.model, ds.rows, ds.split.validation, cfg.huber_delta) +
        regularization_penalty(result.model) /
            static_cast<double>(result.model.heads.size());
    CHECK(snapshot_val == min_val);
}

TEST_CASE("the learning rate only decays, by the plateau factor, down to the floor") {
    const EncodedDataset ds = synthetic_encoded(15, 2);
    TrainConfig cfg;
    cfg.max_epochs = 120;
    cfg.early_stop_patience = 120;
    cfg.lr_patience = 3;
    cfg.seed = 13;
    const TrainResult result = train(ds, cfg);

    CHECK(result.history.epochs.front().lr == cfg.lr0);
    for (std::size_t i = 1; i < result.history.epochs.size(); ++i) {
        const double prev = result.history.epochs[i - 1].lr;
        const double cur = result.history.epochs[i].lr;
        CHECK(cur <= prev);
        CHECK(cur >= cfg.min_lr);
        const bool unchanged = cur == prev;
        const bool halved = cur == std::max(prev * cfg.lr_factor, cfg.min_lr);
        CHECK((unchanged || halved));
    }
}

TEST_CASE("early stopping fires after the patience runs out") {
    const EncodedDataset ds = synthetic_encoded(12, 4);
    TrainConfig cfg;
    cfg.lr0 = 1e-15; // updates too small to ever improve validation loss
    cfg.min_lr = 1e-15;
    cfg.max_epochs = 500;
    cfg.early_stop_patience = 7;
    cfg.lr_patience = 100;
    cfg.seed = 17;
    const TrainResult result = train(ds, cfg);
    CHECK(result.history.epochs.size() == 1 + cfg.early_stop_patience);
}

TEST_CASE("non-finite losses abort training with a located error") {
    EncodedDataset ds = synthetic_encoded(10, 5);
    for (EncodedRow& row : ds.rows) row.targets[1] = std::numeric_limits<double>::quiet_NaN();
    TrainConfig cfg;
    cfg.max_epochs = 3;
    CHECK_THROWS_WITH_AS(train(ds, cfg), "train: non-finite loss at epoch 1 batch 0 head latency",
                         std::runtime_error);
}

TEST_CASE("train validates its configuration and splits") {
    const EncodedDataset ds = synthetic_encoded(10, 6);
    TrainConfig cfg;

    TrainConfig bad = cfg;
    bad.batch_size = 0;
    CHECK_THROWS_AS(train(ds, bad), DataError);
    bad = cfg;
    bad.lr_factor = 1.0;
    CHECK_THROWS_AS(train(ds, bad), DataError);
    bad = cfg;
    bad.lr0 = 0.0;
    CHECK_THROWS_AS(train(ds, bad), DataError);
    bad = cfg;
    bad.huber_delta = 0.0;
    CHECK_THROWS_AS(train(ds, bad), DataError);
    bad = cfg;
    bad.max_epochs = 0;
    CHECK_THROWS_AS(train(ds, bad), DataError);

    EncodedDataset no_val = ds;
    no_val.split.validation.clear();
    CHECK_THROWS_AS(train(no_val, cfg), DataError);

    EncodedDataset out_of_range = ds;
    out_of_range.split.train.back() = 1000;
    CHECK_THROWS_AS(train(out_of_range, cfg), DataError);
}

TEST_CASE("predict inverts the scaler around a zeroed network") {
    MlpModel model = init_model(default_head_specs(), 8);
    zero_weights(model);

    Scaler scaler;
    const char* names[5] = {"reads", "writes", "t_energy", "t_latency", "t_endurance"};
    for (std::size_t i = 0; i < 5; ++i) {
        scaler.columns[i].name = names[i];
        scaler.columns[i].mean = 10.0 * static_cast<double>(i + 1);
        scaler.columns[i].std = 2.0;
    }

    const Prediction p = predict(model, scaler, DeviceParams{}, 900, 100);
    CHECK(p.write_energy_pj == 30.0);
    CHECK(p.write_latency_ns == 40.0);
    CHECK(p.endurance_writes == 50.0);

    CHECK_THROWS_AS(predict(model, scaler, DeviceParams{1.9, 155.0, 3.0, 105.0}, 1, 1),
                    DataError);
}

TEST_CASE("model files round-trip byte for byte") {
    const auto dir = temp_dir("model");
    const MlpModel model = init_model(default_head_specs(), 12345);
    const std::string text = serialize_model(model);
    CHECK(text.substr(0, 22) == "pcm-mlp v1 seed=12345\n");

    const MlpModel back = parse_model(text, "mem");
    CHECK(back.seed == model.seed);
    CHECK(serialize_model(back) == text);

    write_model(model, dir / "model.txt");
    const MlpModel from_disk = load_model(dir / "model.txt");
    CHECK(serialize_model(from_disk) == text);
    CHECK(read_text_file(dir / "model.txt") == text);
}

TEST_CASE("malformed model files are rejected") {
    const MlpModel model = init_model(default_head_specs(), 1);
    const std::string text = serialize_model(model);

    CHECK_THROWS_AS(parse_model("bogus\n", "mem"), DataError);
    CHECK_THROWS_AS(parse_model("pcm-mlp v1 seed=1\n", "mem"), DataError);
    CHECK_THROWS_AS(parse_model(text + "extra\n", "mem"), DataError);

    std::string wrong_head = text;
    const std::size_t pos = wrong_head.find("head energy");
    REQUIRE(pos != std::string::npos);
    wrong_head.replace(pos, 11, "head power ");
    CHECK_THROWS_AS(parse_model(wrong_head, "mem"), DataError);

    std::string truncated = text.substr(0, text.size() / 2);
    truncated = truncated.substr(0, truncated.rfind('\n') + 1);
    CHECK_THROWS_AS(parse_model(truncated, "mem"), DataError);
}

TEST_CASE("history files round-trip") {
    const auto dir = temp_dir("history");
    TrainHistory history;
    history.epochs = {{1, 3.5, 3.25, 1e-3}, {2, 3.0, 2.75, 1e-3}, {3, 2.5, 2.8, 5e-4}};
    write_history(history, dir / "history.csv");

    const std::string text = read_text_file(dir / "history.csv");
    CHECK(text.substr(0, 29) == std::string(kHistoryHeader) + "\n");

    const TrainHistory back = load_history(dir / "history.csv");
    REQUIRE(back.epochs.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back.epochs[i].epoch == history.epochs[i].epoch);
        CHECK(back.epochs[i].train_loss == history.epochs[i].train_loss);
        CHECK(back.epochs[i].val_loss == history.epochs[i].val_loss);
        CHECK(back.epochs[i].lr == history.epochs[i].lr);
    }

    write_text_file(dir / "bad.csv", "epoch,nope\n");
    CHECK_THROWS_AS(load_history(dir / "bad.csv"), DataError);
}

TEST_SUITE_END();
