// Copyright 2026 The pdqlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace pdqlab {

// SplitMix64 finalizer (Steele/Lea/Flood). Counter-mode use keeps every
// draw addressable by (seed, stream, index), so parallel replicates are
// reproducible independent of scheduling.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derive an independent sub-seed for (stream, index) under a master seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return mix64(mix64(seed ^ 0x6a09e667f3bcc909ULL) + mix64(stream) + index * 0x9e3779b97f4a7c15ULL);
}

/// Deterministic counter-based generator: draw i is a pure function of
/// (state0, i).
class counter_rng {
public:
    explicit counter_rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return mix64(state_ + (counter_++) * 0xd1342543de82ef95ULL); }

    /// Uniform double on the open interval (0,1); never returns 0 or 1.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
    std::uint64_t counter_ = 0;
};

}  // namespace pdqlab
