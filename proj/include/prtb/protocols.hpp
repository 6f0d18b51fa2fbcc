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

#ifndef PRTB_PROTOCOLS_HPP_
#define PRTB_PROTOCOLS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prtb/caps.hpp"
#include "prtb/fnspec.hpp"
#include "prtb/prtlp.hpp"
#include "prtb/report.hpp"

namespace prtb::protocols {

using fnspec::PartialFunction;
using prtlp::AccuracyParams;
using prtlp::PrimalSolution;
using prtlp::SetMask;

// One shared-randomness outcome of a zero-communication protocol: Alice
// declines to abort exactly on alice_set, Bob answers from bob_out[y].
struct Atom {
  Rat prob;                            // > 0
  SetMask alice_set;                   // subset of X
  std::vector<std::vector<Rat>> bob_out;  // [ny][nz], rows sum to 1
};

// Zero-communication protocol with abort. The non-abort probability is the
// same for every x (uniformity is over x; Alice's abort never depends on y).
struct ZeroCommProtocol {
  int nx = 0, ny = 0, nz = 0;
  std::vector<Atom> atoms;  // probabilities sum to 1
  Rat declared_eff;         // in (0, 1]

  // Exact check of all structural requirements (probability sums, uniform
  // non-abort equal to declared_eff, Bob rows are distributions).
  CheckReport validate() const;

  // Merges atoms with equal Alice-sets (probabilities summed, Bob rows mixed
  // proportionally); canonical ascending set order.
  ZeroCommProtocol merged() const;

  std::string to_text() const;
  static ZeroCommProtocol from_text(const std::string& text);
};

// One deterministic one-way strategy: Alice's message function and Bob's
// output function, drawn with probability prob.
struct Strategy {
  Rat prob;                  // > 0
  std::vector<int> msg_fn;   // [nx] -> [0, 2^c)
  std::vector<int> out_fn;   // [2^c * ny] -> z, index m * ny + y
};

// Shared-randomness one-way protocol with c-bit messages.
struct OneWayProtocol {
  int nx = 0, ny = 0, nz = 0;
  int c = 0;
  std::vector<Strategy> strategies;

  CheckReport validate() const;
  std::string to_text() const;
  static OneWayProtocol from_text(const std::string& text);
};

// Boosted one-way protocol in compact form: T independent draws from the
// base protocol's atoms, Alice sends the first non-aborting index (or a
// reserved failure symbol), Bob answers from the indexed atom or falls back
// to a uniform output. Kept unexpanded because the strategy space is
// |atoms|^T-fold; statistics use the exact analytic decomposition instead.
struct BoostedProtocol {
  ZeroCommProtocol base;
  std::int64_t repetitions = 0;  // T
  int c = 0;                     // ceil(log2(T + 1)); messages 0..T-1 are
                                 // indices, message T is the failure symbol

  std::string to_text() const;
  static BoostedProtocol from_text(const std::string& text);

  // Explicit strategy expansion (tuples of atoms, Bob sampling choices and
  // the fallback draw). Throws CapExceeded past caps.max_strategies.
  OneWayProtocol materialize(const Caps& caps = {}) const;
};

// Exact per-input efficiency and conditional error. For defined cells with
// zero non-abort probability the conditional error is undefined, reported as
// a distinct condition rather than a failure.
struct ProtocolStats {
  int nx = 0, ny = 0, nz = 0;
  std::vector<Rat> per_input_eff;                 // [nx*ny]
  std::vector<std::optional<Rat>> per_input_err;  // defined cells only, by
                                                  // canonical cell index
  Rat worst_err;  // max over defined cells with defined error (0 if none)
  Rat eff;        // the uniform non-abort probability (1 for one-way)
  bool eff_uniform = true;        // false flags a uniformity violation
  bool has_undefined_err = false; // some defined cell never gets an answer

  std::string to_text(const PartialFunction& f) const;
};

// Lemma-style compilation of optimal weights into a protocol: one atom per
// positive set weight, atom probability w_A / value, Bob's row
// w_{A,y,.} / w_A; non-abort probability 1 / value. The solution's
// f-independent requirements are checked; pass a verified solution.
ZeroCommProtocol compile_protocol(const PrimalSolution& sol);

// Inverse direction: merges atoms over equal Alice-sets and rescales by the
// efficiency, recovering feasible weights of value 1 / eff. Rejects empty
// Alice-sets and zero efficiency.
PrimalSolution extract_weights(const ZeroCommProtocol& p);

// Message-guessing conversion: atoms indexed by (strategy, guessed message);
// the result has non-abort probability exactly 2^-c and preserves each
// defined cell's conditional error.
ZeroCommProtocol oneway_to_zerocomm(const OneWayProtocol& p);

// Repetition boosting: T is the least integer with (1 - eff)^T <= delta,
// found by exact rational powering (which implies T <= ceil(ln(1/delta)/eff));
// message length ceil(log2(T + 1)) including the failure symbol. The result's
// exact worst-case error is at most eps + delta.
BoostedProtocol boost(const ZeroCommProtocol& p, const PartialFunction& f,
                      const AccuracyParams& acc, const Caps& caps = {});

ProtocolStats exact_stats(const ZeroCommProtocol& p, const PartialFunction& f);
ProtocolStats exact_stats(const OneWayProtocol& p, const PartialFunction& f);
// Analytic form: err = (1 - miss) * base_err + miss * (nz-1)/nz per cell,
// miss = (1 - eff)^T; exact because draws are independent and identically
// distributed and the first non-aborting draw has the conditional atom law.
ProtocolStats exact_stats(const BoostedProtocol& p, const PartialFunction& f);

// Monte-Carlo estimate with per-estimate half-widths at >= 99% coverage
// (three conservative binomial standard errors, clamped to 1). Deterministic
// given the seed; each cell derives its own stream from (seed, cell).
struct EstimatedCell {
  Rat eff_estimate;
  Rat eff_half_width;
  std::optional<Rat> err_estimate;  // absent when no trial produced output
  Rat err_half_width;
  std::int64_t trials = 0;
  std::int64_t non_abort = 0;
};

struct SimulationResult {
  int nx = 0, ny = 0, nz = 0;
  std::vector<EstimatedCell> cells;  // [nx*ny]
  std::string to_text(const PartialFunction& f) const;
};

SimulationResult simulate(const ZeroCommProtocol& p, const PartialFunction& f,
                          std::int64_t samples, std::uint64_t seed);
SimulationResult simulate(const OneWayProtocol& p, const PartialFunction& f,
                          std::int64_t samples, std::uint64_t seed);
SimulationResult simulate(const BoostedProtocol& p, const PartialFunction& f,
                          std::int64_t samples, std::uint64_t seed);

// Round-trip entry point for serialized protocols of any kind.
struct AnyProtocol {
  enum class Kind { kZeroComm, kOneWay, kBoosted } kind;
  ZeroCommProtocol zerocomm;
  OneWayProtocol oneway;
  BoostedProtocol boosted;
};

AnyProtocol parse_protocol(const std::string& text);

}  // namespace prtb::protocols

#endif  // PRTB_PROTOCOLS_HPP_
