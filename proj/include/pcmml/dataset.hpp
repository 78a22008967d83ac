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

#ifndef PCMML_DATASET_HPP
#define PCMML_DATASET_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "pcmml/sweep.hpp"

namespace pcmml {

/// The three regression targets, each served by its own sub-network.
enum class Head { Energy, Latency, Endurance };
inline constexpr std::array<Head, 3> kHeads{Head::Energy, Head::Latency, Head::Endurance};
const char* head_name(Head h); ///< "energy" / "latency" / "endurance"

/// Feature vector layout (dimension 14):
///   [0..2]   one-hot set voltage    {1.5, 2.0, 2.5} V
///   [3..5]   one-hot set pulse      {150, 155, 160} ns
///   [6..8]   one-hot reset voltage  {2.5, 3.0, 3.5} V
///   [9..11]  one-hot reset pulse    {100, 105, 110} ns
///   [12]     reads  (standardized)
///   [13]     writes (standardized)
inline constexpr std::size_t kFeatureDim = 14;
inline constexpr std::size_t kTargetDim = 3;

/// Indicator vector for `value` over ascending `categories`; membership is
/// exact comparison (the grids are exactly representable). Throws DataError
/// naming `feature` for an unseen value.
std::vector<double> one_hot(double value, std::span<const double> categories,
                            std::string_view feature);

/// Which feature indices feed each head. Energy sees everything; latency
/// sees both pulse one-hots plus reads/writes; endurance sees reads/writes
/// only.
const std::vector<std::size_t>& head_feature_indices(Head h);

/// Per-column standardization (x - mean) / std fitted on the training split
/// only, population std. Columns in file order: reads, writes, t_energy,
/// t_latency, t_endurance.
struct ScalerColumn {
    std::string name;
    double mean = 0.0;
    double std = 1.0;
};

struct Scaler {
    std::array<ScalerColumn, 5> columns;

    static constexpr std::size_t kReads = 0;
    static constexpr std::size_t kWrites = 1;
    /// Target column index for a head: 2 + head position in kHeads.
    static std::size_t target_column(Head h) { return 2 + static_cast<std::size_t>(h); }

    double transform(std::size_t column, double value) const;
    double inverse(std::size_t column, double value) const;
};

inline constexpr const char* kScalerHeader = "name,mean,std";
std::string serialize_scaler(const Scaler& scaler);
void write_scaler(const Scaler& scaler, const std::filesystem::path& path);
Scaler load_scaler(const std::filesystem::path& path);

/// Row-index partition. Membership comes from a seeded shuffle followed by a
/// contiguous 60/20/20 cut in train/test/validation order (floor rounding,
/// remainder to train); each list is then sorted ascending so the partition
/// survives a file round trip unchanged.
struct SplitIndices {
    std::vector<std::uint32_t> train;
    std::vector<std::uint32_t> validation;
    std::vector<std::uint32_t> test;
};

/// Throws DataError when n_rows < 5.
SplitIndices split_indices(std::size_t n_rows, std::uint64_t seed);

struct EncodedRow {
    std::array<double, kFeatureDim> features{};
    std::array<double, kTargetDim> targets{}; ///< standardized (energy, latency, endurance)
};

struct EncodedDataset {
    std::vector<EncodedRow> rows;
    Scaler scaler;
    SplitIndices split;
};

/// One-hot encodes the grid columns and standardizes reads/writes and the
/// three targets with train-split statistics. A zero-variance column gets
/// scale 1 and a warning (collected into `warnings` when given, else
/// stderr). Throws DataError on failed rows or off-grid values.
EncodedDataset encode(const std::vector<SweepRow>& rows, const SplitIndices& split,
                      std::vector<std::string>* warnings = nullptr);

/// Encoded dataset CSV: header row_id,f0..f13,t_energy,t_latency,
/// t_endurance,split with split in {train,val,test}.
std::string serialize_encoded(const EncodedDataset& ds);
void write_encoded(const EncodedDataset& ds, const std::filesystem::path& path);
/// Loads rows and split membership; the scaler lives in its own file and is
/// not reconstructed here.
EncodedDataset load_encoded(const std::filesystem::path& path);

} // namespace pcmml

#endif // PCMML_DATASET_HPP
