// Copyright 2026 The edgestep Authors
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


#ifndef EDGESTEP_RNG_H_
#define EDGESTEP_RNG_H_

#include <cstdint>
#include <random>

namespace edgestep {

// Independent random streams used by one replica. Each purpose gets its own
// engine so that, e.g., the vertex/edge coin sequence of a run does not depend
// on how many attachment draws were made.
enum class StreamPurpose : std::uint32_t {
  kCoins = 1,      // Z_s draws of the direct generator
  kAttach = 2,     // preferential-attachment draws of the direct generator
  kTreeEdges = 3,  // tree-edge targets of the doubly-labeled tree
  kTreeLabels = 4, // ghost labels of the doubly-labeled tree
  kTreeUniforms = 5,
  kShuffle = 6,
  kAuxiliary = 7,
};

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of replica `index` under a run-level base seed. Reported in experiment
// outputs so that a single replica can be replayed with `generate --seed`.
constexpr std::uint64_t ReplicaSeed(std::uint64_t base_seed,
                                    std::uint64_t index) {
  return SplitMix64(base_seed ^ SplitMix64(index + 1));
}

// Portable random source: std::mt19937_64 (fully specified by the standard)
// seeded through std::seed_seq from (seed, purpose). Distributions are
// implemented here rather than with <random> distributions, whose output is
// implementation-defined.
class Rng {
 public:
  Rng(std::uint64_t seed, StreamPurpose purpose) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(purpose)};
    engine_.seed(seq);
  }

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound), Lemire's multiply-and-reject method.
  std::uint64_t UniformBelow(std::uint64_t bound) {
    unsigned __int128 m =
        static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool Bernoulli(double p) { return Uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace edgestep

#endif  // EDGESTEP_RNG_H_
