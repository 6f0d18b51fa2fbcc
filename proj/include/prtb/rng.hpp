// Copyright 2026 The prtb Authors
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

#ifndef PRTB_RNG_HPP_
#define PRTB_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "prtb/rational.hpp"

namespace prtb {

// Sampling decisions are made by exact integer comparison against uniform
// draws; no floating point enters any accept/reject decision. mt19937_64 has
// a standardized output sequence, so results are reproducible across
// platforms for a given seed.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Derives an independent stream for a (seed, index) pair; used to keep
// sharded or per-cell simulation deterministic regardless of scheduling.
inline std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s ^= 0x632BE59BD9B4E019ULL * (index + 1);
  std::uint64_t b = splitmix64(s);
  return std::mt19937_64(a ^ (b << 1));
}

// Unbiased uniform draw from [0, bound) by rejection; bound > 0.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

// Unbiased uniform draw from [0, bound) for arbitrary-size bounds.
Int uniform_below(std::mt19937_64& rng, const Int& bound);

// Samples an index from an exact rational categorical distribution.
// Weights need not be normalized; they must be nonnegative with positive sum.
class CategoricalSampler {
 public:
  explicit CategoricalSampler(const std::vector<Rat>& weights);
  std::size_t draw(std::mt19937_64& rng) const;

 private:
  Int total_;
  std::vector<Int> cumulative_;  // strictly increasing, ends at total_
};

}  // namespace prtb

#endif  // PRTB_RNG_HPP_
