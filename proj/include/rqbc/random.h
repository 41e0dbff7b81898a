// Copyright 2026 The rqbc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RQBC_RANDOM_H_
#define RQBC_RANDOM_H_

#include <cstdint>
#include <random>

namespace rqbc {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
constexpr uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of the `index`-th stream derived from a master seed.
constexpr uint64_t stream_seed(uint64_t master, uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// Random stream with a platform-independent draw sequence.
///
/// The standard distributions are implementation-defined, so draws are
/// built directly from the raw 64-bit engine output.
class Rng {
   public:
    explicit Rng(uint64_t seed) : engine_(seed) {
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Fair bit.
    int bit() {
        return static_cast<int>(engine_() >> 63);
    }

    uint64_t next_u64() {
        return engine_();
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace rqbc

#endif  // RQBC_RANDOM_H_
