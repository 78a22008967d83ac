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

#ifndef PCMML_EVAL_HPP
#define PCMML_EVAL_HPP

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcmml/mlp.hpp"

namespace pcmml {

/// 100 * mean(|a - p| / |a|). Any actual of 0 is a domain error.
double mape(std::span<const double> actuals, std::span<const double> predictions);

struct HeadEval {
    Head head = Head::Energy;
    double mape_percent = 0.0;
    std::size_t n = 0;
    std::vector<std::pair<double, double>> pairs; ///< (actual, predicted), original units
};

struct EvalReport {
    std::array<HeadEval, 3> heads; ///< indexed by Head position
    std::string history_ref;       ///< path of the training-history CSV, if any
};

/// Runs the model over the test split, inverse-transforms predictions and
/// targets to original units, and computes per-head MAPE.
EvalReport evaluate(const MlpModel& model, const EncodedDataset& ds, const Scaler& scaler);

inline constexpr const char* kEvalSummaryHeader = "output,mape_percent,n";

/// Summary rows in the order endurance, write_latency, write_energy.
std::string serialize_eval_summary(const EvalReport& report);
/// Scatter CSV `actual,predicted` for one head.
std::string serialize_scatter(const HeadEval& head);

/// Writes summary.csv plus regression_<head>.csv per head into `dir`.
void write_eval_report(const EvalReport& report, const std::filesystem::path& dir);

} // namespace pcmml

#endif // PCMML_EVAL_HPP
