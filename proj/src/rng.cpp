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

#include "prtb/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace prtb {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound = 0");
  if ((bound & (bound - 1)) == 0) return rng() & (bound - 1);
  // Rejection above the largest multiple of bound keeps the draw unbiased.
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t u;
  do {
    u = rng();
  } while (u >= limit);
  return u % bound;
}

Int uniform_below(std::mt19937_64& rng, const Int& bound) {
  if (sgn(bound) <= 0) throw std::invalid_argument("uniform_below: bound <= 0");
  if (mpz_fits_ulong_p(bound.get_mpz_t()) &&
      bound.get_ui() <= ~std::uint64_t{0}) {
    return Int(static_cast<unsigned long>(
        uniform_below(rng, static_cast<std::uint64_t>(bound.get_ui()))));
  }
  std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  std::size_t words = (bits + 63) / 64;
  while (true) {
    Int v = 0;
    for (std::size_t w = 0; w < words; ++w) {
      mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), 64);
      v += Int(static_cast<unsigned long>(rng()));
    }
    mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), bits);
    if (v < bound) return v;
  }
}

CategoricalSampler::CategoricalSampler(const std::vector<Rat>& weights) {
  if (weights.empty())
    throw std::invalid_argument("categorical: no weights");
  Int denom_lcm = 1;
  for (const auto& w : weights) {
    if (sgn(w) < 0) throw std::invalid_argument("categorical: negative weight");
    mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), w.get_den_mpz_t());
  }
  Int running = 0;
  cumulative_.reserve(weights.size());
  for (const auto& w : weights) {
    Int scaled = Int(w.get_num()) * (denom_lcm / Int(w.get_den()));
    running += scaled;
    cumulative_.push_back(running);
  }
  total_ = running;
  if (sgn(total_) <= 0)
    throw std::invalid_argument("categorical: zero total weight");
}

std::size_t CategoricalSampler::draw(std::mt19937_64& rng) const {
  Int x = uniform_below(rng, total_);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
  return static_cast<std::size_t>(it - cumulative_.begin());
}

}  // namespace prtb
