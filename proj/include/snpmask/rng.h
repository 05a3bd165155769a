// Copyright 2026 The snpmask Authors
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

#ifndef SNPMASK_RNG_H_
#define SNPMASK_RNG_H_

#include <cstdint>
#include <random>

namespace snpmask {

// SplitMix64 stream, used to derive independent substream seeds from a master
// seed so that every consumer of randomness is reproducible in isolation.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Derives a substream seed from a master seed and a fixed set of indices
// (e.g. trial, mechanism, position) without correlations between substreams.
inline std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t a,
                                std::uint64_t b = 0, std::uint64_t c = 0) {
  SplitMix64 sm(master ^ (a * 0x9e3779b97f4a7c15ULL) ^
                (b * 0xb5297a4d3a2d9fd1ULL) ^ (c * 0x68e31da4d85db7c5ULL));
  sm.Next();
  return sm.Next();
}

using Rng = std::mt19937_64;

// Uniform double in [0, 1) with 53 random bits; avoids distribution-object
// implementation differences so streams are bit-stable.
inline double UniformDouble(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n), n >= 1, by rejection on the top range.
inline std::uint64_t UniformInt(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = ~0ULL - (~0ULL % n);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

}  // namespace snpmask

#endif  // SNPMASK_RNG_H_
