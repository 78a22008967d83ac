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

#include "pcmml/eval.hpp"

#include <cmath>

#include "pcmml/error.hpp"
#include "pcmml/textio.hpp"

namespace pcmml {

double mape(std::span<const double> actuals, std::span<const double> predictions) {
    if (actuals.size() != predictions.size()) {
        throw DataError("mape: length mismatch (" + format_u64(actuals.size()) + " vs " +
                        format_u64(predictions.size()) + ")");
    }
    if (actuals.empty()) throw DataError("mape: empty input");
    double sum = 0.0;
    for (std::size_t i = 0; i < actuals.size(); ++i) {
        if (actuals[i] == 0.0) {
            throw DataError("mape: actual value at index " + format_u64(i) +
                            " is zero (undefined relative error)");
        }
        sum += std::fabs(actuals[i] - predictions[i]) / std::fabs(actuals[i]);
    }
    return 100.0 * sum / static_cast<double>(actuals.size());
}

EvalReport evaluate(const MlpModel& model, const EncodedDataset& ds, const Scaler& scaler) {
    if (ds.split.test.empty()) throw DataError("evaluate: test split is empty");
    EvalReport report;
    for (std::size_t hi = 0; hi < 3; ++hi) {
        report.heads[hi].head = kHeads[hi];
        report.heads[hi].pairs.reserve(ds.split.test.size());
    }
    for (std::uint32_t idx : ds.split.test) {
        const EncodedRow& row = ds.rows.at(idx);
        const std::array<double, 3> std_pred = forward(model, row.features);
        for (std::size_t hi = 0; hi < 3; ++hi) {
            const std::size_t col = Scaler::target_column(kHeads[hi]);
            const double actual = scaler.inverse(col, row.targets[hi]);
            const double predicted = scaler.inverse(col, std_pred[hi]);
            report.heads[hi].pairs.emplace_back(actual, predicted);
        }
    }
    for (HeadEval& he : report.heads) {
        std::vector<double> actuals;
        std::vector<double> preds;
        actuals.reserve(he.pairs.size());
        preds.reserve(he.pairs.size());
        for (const auto& [a, p] : he.pairs) {
            actuals.push_back(a);
            preds.push_back(p);
        }
        he.n = he.pairs.size();
        he.mape_percent = mape(actuals, preds);
    }
    return report;
}

namespace {

const HeadEval& head_entry(const EvalReport& report, Head h) {
    return report.heads[static_cast<std::size_t>(h)];
}

} // namespace

std::string serialize_eval_summary(const EvalReport& report) {
    std::string out(kEvalSummaryHeader);
    out.push_back('\n');
    const std::array<std::pair<const char*, Head>, 3> rows{{
        {"endurance", Head::Endurance},
        {"write_latency", Head::Latency},
        {"write_energy", Head::Energy},
    }};
    for (const auto& [label, head] : rows) {
        const HeadEval& he = head_entry(report, head);
        out += label;
        out.push_back(',');
        out += format_double(he.mape_percent);
        out.push_back(',');
        out += format_u64(he.n);
        out.push_back('\n');
    }
    return out;
}

std::string serialize_scatter(const HeadEval& head) {
    std::string out = "actual,predicted\n";
    for (const auto& [a, p] : head.pairs) {
        out += format_double(a);
        out.push_back(',');
        out += format_double(p);
        out.push_back('\n');
    }
    return out;
}

void write_eval_report(const EvalReport& report, const std::filesystem::path& dir) {
    write_text_file(dir / "summary.csv", serialize_eval_summary(report));
    for (const HeadEval& he : report.heads) {
        const std::string name = std::string("regression_") + head_name(he.head) + ".csv";
        write_text_file(dir / name, serialize_scatter(he));
    }
}

} // namespace pcmml
