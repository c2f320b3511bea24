/*
 * Copyright 2026 The gpgreeks Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GPGREEKS_RNG_HPP
#define GPGREEKS_RNG_HPP

#include <cstdint>

#include "gpgreeks/stats.hpp"

namespace gpgreeks {

/// Substream derivation: every random stream in the library is keyed by
/// (master_seed, stream_id, index). The key is folded with splitmix64 so that
/// streams are independent of scheduling: a path simulated on any thread sees
/// the same draws. stream ids are listed in StreamId; index is typically a
/// path or design-point index.
enum class StreamId : std::uint64_t {
    TrainingData = 1,   // inner MC samples per design point
    HedgePaths = 2,     // forward P-measure hedge scenarios
    GoldStandard = 3,   // CRN finite-difference benchmark paths
    Optimizer = 4,      // MLE multistart scrambling
    DesignPaths = 5,    // path-based training designs
    InitialSpot = 6,    // S0 draws
    OnlineStream = 7,   // streamed high-frequency path for online updating
    Synthetic = 8,      // synthetic noise in tests / diagnostics
};

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_id,
                                 std::uint64_t index) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64_next(s) ^ (stream_id * 0xd6e8feb86659fd93ULL);
    std::uint64_t b = a;
    std::uint64_t c = splitmix64_next(b) ^ (index * 0xa0761d6478bd642fULL);
    std::uint64_t d = c;
    return splitmix64_next(d);
}

/// Small, O(1)-seedable generator (splitmix64 core). Deterministic across
/// platforms; each instance is one substream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    Rng(std::uint64_t master, StreamId stream, std::uint64_t index)
        : state_(derive_seed(master, static_cast<std::uint64_t>(stream), index)) {}

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    /// Uniform in (0,1), 53-bit resolution, never exactly 0 or 1.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via the inverse CDF.
    double normal() { return norm_ppf(uniform01()); }

    double normal(double mean, double sd) { return mean + sd * normal(); }

private:
    std::uint64_t state_;
};

}  // namespace gpgreeks

#endif
