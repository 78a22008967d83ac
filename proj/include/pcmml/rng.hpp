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

#ifndef PCMML_RNG_HPP
#define PCMML_RNG_HPP

#include <cmath>
#include <cstdint>
#include <utility>

namespace pcmml {

/// All randomness in this project flows through SplitMix64 so that every
/// output file is reproducible from a single 64-bit seed, independent of
/// platform or standard-library version. The generator is the standard
/// SplitMix64 of Steele, Lea and Flood: the state advances by the golden
/// gamma 0x9E3779B97F4A7C15 and the output is a finalizer of the new state.
/// std::mt19937 / std::normal_distribution are deliberately not used; their
/// output sequences are not pinned across library implementations.

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 output finalizer. Also used as the address -> cell hash in the
/// endurance model.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives an independent child seed from a parent seed and a stream index.
/// child(base, k) = mix64(base + (k + 1) * gamma), i.e. the (k+1)-th raw
/// SplitMix64 output for state `base`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return mix64(base + (stream + 1) * kGoldenGamma);
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return mix64(state_ += kGoldenGamma); }

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), n > 0, via Lemire's multiply-shift.
    /// The modulo bias of the plain multiply-shift is below 2^-64 per draw
    /// for the bounds used here, and the mapping is fixed for determinism.
    std::uint64_t next_below(std::uint64_t n) {
        using u128 = unsigned __int128;
        return static_cast<std::uint64_t>((static_cast<u128>(next()) * n) >> 64);
    }

    /// One standard normal via Box-Muller. Consumes exactly two draws:
    /// u1 in (0, 1] (so log(u1) is finite), u2 in [0, 1);
    /// z = sqrt(-2 ln u1) * cos(2 pi u2).
    double next_normal() {
        double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
    }

private:
    std::uint64_t state_;
};

} // namespace pcmml

#endif // PCMML_RNG_HPP
