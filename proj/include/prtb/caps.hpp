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

#ifndef PRTB_CAPS_HPP_
#define PRTB_CAPS_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace prtb {

// Resource limits. Exceeding one is an operational condition, reported
// distinctly from mathematical outcomes (never silently approximated).
struct Caps {
  // Partition-bound LPs: total variable count (the subset family is 2^nx-1
  // columns wide before cell variables).
  std::int64_t max_lp_vars = std::int64_t{1} << 20;
  // Simplex pivot budget per solve.
  std::int64_t pivot_cap = 10'000'000;
  // Strategy enumeration: raw message-function count K^nx before
  // canonicalization.
  std::int64_t max_raw_msg_fns = 1'000'000;
  // Generated/materialized strategy count.
  std::int64_t max_strategies = 1'000'000;
  // Repetition count for boosting.
  std::int64_t max_boost_t = std::int64_t{1} << 20;
  // exact_rcc instance limits.
  int max_rcc_cells = 36;  // nx * ny
  int max_rcc_c = 4;
  // Guard on intermediate rational size during exact powering.
  std::size_t max_rat_bits = std::size_t{1} << 20;

  // Subset enumeration limit baked into the file format and LP builders.
  static constexpr int kMaxNx = 20;

  // Environment overrides (PRTB_PIVOT_CAP, PRTB_MAX_LP_VARS,
  // PRTB_MAX_RAW_MSG_FNS, PRTB_MAX_STRATEGIES, PRTB_MAX_BOOST_T,
  // PRTB_MAX_RCC_CELLS, PRTB_MAX_RCC_C). CLI flags override these.
  static Caps from_env();
};

// Resource-cap violation: CLI exit status 3.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input or bad usage: CLI exit status 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace prtb

#endif  // PRTB_CAPS_HPP_
