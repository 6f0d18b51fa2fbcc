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

#ifndef PRTB_EXACTRCC_HPP_
#define PRTB_EXACTRCC_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "prtb/caps.hpp"
#include "prtb/fnspec.hpp"
#include "prtb/protocols.hpp"
#include "prtb/report.hpp"

namespace prtb::exactrcc {

using fnspec::PartialFunction;
using prtlp::AccuracyParams;

// A deterministic one-way strategy at message cost c together with its error
// indicator over the defined cells (bit i = errs on defined cell i, in
// canonical cell order).
struct PureStrategy {
  std::vector<int> msg_fn;
  std::vector<int> out_fn;  // [K * ny], K = 2^c
  std::uint64_t err_vec = 0;
};

// Enumerates deterministic strategies up to message relabeling (set
// partitions of X into at most 2^c blocks, by restricted-growth strings).
// With pruning, per-(block, y) choices keep only inclusion-minimal error
// sets and the result keeps only Pareto-undominated error vectors, which
// preserves every mixture's achievable worst-case error. Deduplicated by
// error vector either way.
std::vector<PureStrategy> enumerate_strategies(const PartialFunction& f, int c,
                                               bool prune = true,
                                               const Caps& caps = {});

// The public-coin minimax at cost c: the least worst-case error over
// probability mixtures of pure strategies, as an exact LP (minimize t
// subject to per-cell error <= t). Returns the value and a realizing
// mixture.
struct CostGameResult {
  Rat value;
  protocols::OneWayProtocol mix;
};

CostGameResult min_error_at_cost(const PartialFunction& f, int c,
                                 const Caps& caps = {});

// The same game over a caller-supplied strategy set; used by validation runs
// that compare pruned against unpruned enumerations.
CostGameResult min_error_at_cost_with(
    const PartialFunction& f, int c,
    const std::vector<PureStrategy>& strategies, const Caps& caps = {});

// Exact one-way randomized communication complexity by increasing cost:
// c_star is the least c whose game value is <= eps. Sending x verbatim costs
// ceil(log2 nx) and errs nowhere, so the search terminates.
struct RccResult {
  int c_star = 0;
  std::map<int, Rat> game_values;  // populated for 0..c_star
  protocols::OneWayProtocol optimal_mix;
};

RccResult exact_rcc(const PartialFunction& f, const AccuracyParams& acc,
                    const Caps& caps = {});

// End-to-end sandwich verification: (i) the exact communication complexity
// at eps dominates the log of the partition bound; (ii) at eps + delta it is
// at most the boosted protocol's cost; (iii) the boosted protocol's exact
// error is within eps + delta. Any failed check fails the report.
Report verify_sandwich(const PartialFunction& f, const AccuracyParams& acc,
                       const Caps& caps = {});

}  // namespace prtb::exactrcc

#endif  // PRTB_EXACTRCC_HPP_
