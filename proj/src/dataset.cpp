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

#include "pcmml/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "pcmml/device_params.hpp"
#include "pcmml/error.hpp"
#include "pcmml/rng.hpp"
#include "pcmml/textio.hpp"

namespace pcmml {

const char* head_name(Head h) {
    switch (h) {
    case Head::Energy: return "energy";
    case Head::Latency: return "latency";
    case Head::Endurance: return "endurance";
    }
    return "?";
}

std::vector<double> one_hot(double value, std::span<const double> categories,
                            std::string_view feature) {
    std::vector<double> out(categories.size(), 0.0);
    for (std::size_t i = 0; i < categories.size(); ++i) {
        if (value == categories[i]) {
            out[i] = 1.0;
            return out;
        }
    }
    throw DataError("one_hot: value " + format_double(value) + " not in category list for " +
                    std::string(feature));
}

const std::vector<std::size_t>& head_feature_indices(Head h) {
    static const std::vector<std::size_t> energy{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
    static const std::vector<std::size_t> latency{3, 4, 5, 9, 10, 11, 12, 13};
    static const std::vector<std::size_t> endurance{12, 13};
    switch (h) {
    case Head::Energy: return energy;
    case Head::Latency: return latency;
    case Head::Endurance: return endurance;
    }
    return energy;
}

double Scaler::transform(std::size_t column, double value) const {
    const ScalerColumn& c = columns.at(column);
    return (value - c.mean) / c.std;
}

double Scaler::inverse(std::size_t column, double value) const {
    const ScalerColumn& c = columns.at(column);
    return value * c.std + c.mean;
}

std::string serialize_scaler(const Scaler& scaler) {
    std::string out(kScalerHeader);
    out.push_back('\n');
    for (const ScalerColumn& c : scaler.columns) {
        out += c.name;
        out.push_back(',');
        out += format_double(c.mean);
        out.push_back(',');
        out += format_double(c.std);
        out.push_back('\n');
    }
    return out;
}

void write_scaler(const Scaler& scaler, const std::filesystem::path& path) {
    write_text_file(path, serialize_scaler(scaler));
}

Scaler load_scaler(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    const std::vector<std::string_view> lines = split_lines(text);
    if (lines.empty() || lines[0] != kScalerHeader) {
        throw DataError("scaler file " + path.string() + ": missing header '" +
                        std::string(kScalerHeader) + "'");
    }
    Scaler scaler;
    static const std::array<const char*, 5> expected{"reads", "writes", "t_energy", "t_latency",
                                                     "t_endurance"};
    if (lines.size() != 1 + expected.size()) {
        throw DataError("scaler file " + path.string() + ": expected " +
                        format_u64(expected.size()) + " rows, found " +
                        format_u64(lines.size() - 1));
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const std::string where = path.string() + " line " + format_u64(i + 2);
        const std::vector<std::string_view> f = split_fields(lines[i + 1], ',');
        if (f.size() != 3) throw DataError(where + ": expected 3 fields");
        if (f[0] != expected[i]) {
            throw DataError(where + ": expected column '" + expected[i] + "', found '" +
                            std::string(f[0]) + "'");
        }
        scaler.columns[i].name = expected[i];
        scaler.columns[i].mean = parse_double(f[1], where + " mean");
        scaler.columns[i].std = parse_double(f[2], where + " std");
        if (!(scaler.columns[i].std > 0.0)) throw DataError(where + ": std must be positive");
    }
    return scaler;
}

SplitIndices split_indices(std::size_t n_rows, std::uint64_t seed) {
    if (n_rows < 5) {
        throw DataError("split: need at least 5 rows, got " + format_u64(n_rows));
    }
    std::vector<std::uint32_t> order(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) order[i] = static_cast<std::uint32_t>(i);
    SplitMix64 rng(seed);
    for (std::size_t i = n_rows - 1; i > 0; --i) {
        const std::uint64_t j = rng.next_below(i + 1);
        std::swap(order[i], order[j]);
    }
    const std::size_t n_test = n_rows / 5;
    const std::size_t n_val = n_rows / 5;
    const std::size_t n_train = n_rows - n_test - n_val;
    SplitIndices split;
    split.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train),
                      order.begin() + static_cast<std::ptrdiff_t>(n_train + n_test));
    split.validation.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train + n_test),
                            order.end());
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    std::sort(split.validation.begin(), split.validation.end());
    return split;
}

namespace {

ScalerColumn fit_column(std::string name, const std::vector<double>& values,
                        std::vector<std::string>* warnings) {
    ScalerColumn col;
    col.name = std::move(name);
    double sum = 0.0;
    for (double v : values) sum += v;
    col.mean = sum / static_cast<double>(values.size());
    double sq = 0.0;
    for (double v : values) {
        const double d = v - col.mean;
        sq += d * d;
    }
    const double var = sq / static_cast<double>(values.size());
    const double sd = std::sqrt(var);
    if (sd > 0.0 && std::isfinite(sd)) {
        col.std = sd;
    } else {
        col.std = 1.0;
        const std::string msg = "warning: column " + col.name +
                                " has zero variance on the training split; using scale 1";
        if (warnings != nullptr) {
            warnings->push_back(msg);
        } else {
            std::cerr << msg << "\n";
        }
    }
    return col;
}

const char* split_label(const SplitIndices& split, std::uint32_t row) {
    if (std::binary_search(split.train.begin(), split.train.end(), row)) return "train";
    if (std::binary_search(split.validation.begin(), split.validation.end(), row)) return "val";
    if (std::binary_search(split.test.begin(), split.test.end(), row)) return "test";
    throw DataError("encode: row " + format_u64(row) + " missing from split");
}

} // namespace

EncodedDataset encode(const std::vector<SweepRow>& rows, const SplitIndices& split,
                      std::vector<std::string>* warnings) {
    if (rows.empty()) throw DataError("encode: empty dataset");
    if (split.train.size() + split.validation.size() + split.test.size() != rows.size()) {
        throw DataError("encode: split covers " +
                        format_u64(split.train.size() + split.validation.size() +
                                   split.test.size()) +
                        " rows but dataset has " + format_u64(rows.size()));
    }
    for (const SweepRow& r : rows) {
        if (r.failed || !std::isfinite(r.total_write_energy_pj) ||
            !std::isfinite(r.total_write_latency_ns) || !std::isfinite(r.endurance_per_bank)) {
            throw DataError("encode: row " + format_u64(r.row_id) +
                            " is a failed sweep row; re-run the sweep before encoding");
        }
    }

    std::vector<double> reads(split.train.size());
    std::vector<double> writes(split.train.size());
    std::vector<double> t_energy(split.train.size());
    std::vector<double> t_latency(split.train.size());
    std::vector<double> t_endurance(split.train.size());
    for (std::size_t i = 0; i < split.train.size(); ++i) {
        const SweepRow& r = rows.at(split.train[i]);
        reads[i] = static_cast<double>(r.reads);
        writes[i] = static_cast<double>(r.writes);
        t_energy[i] = r.total_write_energy_pj;
        t_latency[i] = r.total_write_latency_ns;
        t_endurance[i] = r.endurance_per_bank;
    }
    EncodedDataset ds;
    ds.scaler.columns[0] = fit_column("reads", reads, warnings);
    ds.scaler.columns[1] = fit_column("writes", writes, warnings);
    ds.scaler.columns[2] = fit_column("t_energy", t_energy, warnings);
    ds.scaler.columns[3] = fit_column("t_latency", t_latency, warnings);
    ds.scaler.columns[4] = fit_column("t_endurance", t_endurance, warnings);
    ds.split = split;

    ds.rows.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SweepRow& r = rows[i];
        EncodedRow& e = ds.rows[i];
        std::size_t pos = 0;
        for (double v : one_hot(r.params.set_voltage, kSetVoltageLevels, "set_voltage"))
            e.features[pos++] = v;
        for (double v : one_hot(r.params.set_pulse_ns, kSetPulseLevelsNs, "set_pulse_ns"))
            e.features[pos++] = v;
        for (double v : one_hot(r.params.reset_voltage, kResetVoltageLevels, "reset_voltage"))
            e.features[pos++] = v;
        for (double v : one_hot(r.params.reset_pulse_ns, kResetPulseLevelsNs, "reset_pulse_ns"))
            e.features[pos++] = v;
        e.features[pos++] = ds.scaler.transform(Scaler::kReads, static_cast<double>(r.reads));
        e.features[pos++] = ds.scaler.transform(Scaler::kWrites, static_cast<double>(r.writes));
        e.targets[0] = ds.scaler.transform(2, r.total_write_energy_pj);
        e.targets[1] = ds.scaler.transform(3, r.total_write_latency_ns);
        e.targets[2] = ds.scaler.transform(4, r.endurance_per_bank);
    }
    return ds;
}

namespace {

std::string encoded_header() {
    std::string h = "row_id";
    for (std::size_t i = 0; i < kFeatureDim; ++i) {
        h += ",f";
        h += format_u64(i);
    }
    h += ",t_energy,t_latency,t_endurance,split";
    return h;
}

} // namespace

std::string serialize_encoded(const EncodedDataset& ds) {
    std::string out = encoded_header();
    out.push_back('\n');
    for (std::size_t i = 0; i < ds.rows.size(); ++i) {
        const EncodedRow& e = ds.rows[i];
        out += format_u64(i);
        for (double f : e.features) {
            out.push_back(',');
            out += format_double(f);
        }
        for (double t : e.targets) {
            out.push_back(',');
            out += format_double(t);
        }
        out.push_back(',');
        out += split_label(ds.split, static_cast<std::uint32_t>(i));
        out.push_back('\n');
    }
    return out;
}

void write_encoded(const EncodedDataset& ds, const std::filesystem::path& path) {
    write_text_file(path, serialize_encoded(ds));
}

EncodedDataset load_encoded(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    const std::vector<std::string_view> lines = split_lines(text);
    if (lines.empty() || lines[0] != encoded_header()) {
        throw DataError("encoded dataset " + path.string() + ": missing or malformed header");
    }
    EncodedDataset ds;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::string where = path.string() + " line " + format_u64(li + 1);
        const std::vector<std::string_view> f = split_fields(lines[li], ',');
        if (f.size() != 1 + kFeatureDim + kTargetDim + 1) {
            throw DataError(where + ": expected " + format_u64(1 + kFeatureDim + kTargetDim + 1) +
                            " fields, found " + format_u64(f.size()));
        }
        const std::uint64_t row_id = parse_u64(f[0], where + " row_id");
        if (row_id != li - 1) {
            throw DataError(where + ": row_id " + format_u64(row_id) + " out of order");
        }
        EncodedRow e;
        for (std::size_t i = 0; i < kFeatureDim; ++i) {
            e.features[i] = parse_double(f[1 + i], where + " f" + format_u64(i));
        }
        for (std::size_t i = 0; i < kTargetDim; ++i) {
            e.targets[i] = parse_double(f[1 + kFeatureDim + i], where + " target");
        }
        const std::string_view label = f[1 + kFeatureDim + kTargetDim];
        const auto row32 = static_cast<std::uint32_t>(li - 1);
        if (label == "train") {
            ds.split.train.push_back(row32);
        } else if (label == "val") {
            ds.split.validation.push_back(row32);
        } else if (label == "test") {
            ds.split.test.push_back(row32);
        } else {
            throw DataError(where + ": unknown split label '" + std::string(label) + "'");
        }
        ds.rows.push_back(e);
    }
    if (ds.rows.empty()) throw DataError("encoded dataset " + path.string() + ": no rows");
    return ds;
}

} // namespace pcmml
