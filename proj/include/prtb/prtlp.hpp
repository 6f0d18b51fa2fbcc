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

#ifndef PRTB_PRTLP_HPP_
#define PRTB_PRTLP_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <tuple>

#include "prtb/caps.hpp"
#include "prtb/fnspec.hpp"
#include "prtb/ratlp.hpp"
#include "prtb/report.hpp"

namespace prtb::prtlp {

using fnspec::PartialFunction;

// Worst-case error eps in [0, 1/2) and optional boosting slack delta in
// (0, 1/2) with eps + delta < 1. eps = 0 is a boundary extension (the bound
// is defined for eps in (0, 1/2)); reports flag it.
class AccuracyParams {
 public:
  explicit AccuracyParams(Rat epsilon);
  AccuracyParams(Rat epsilon, Rat delta);

  const Rat& epsilon() const { return epsilon_; }
  bool has_delta() const { return has_delta_; }
  const Rat& delta() const;
  bool epsilon_is_boundary_extension() const { return is_zero(epsilon_); }

 private:
  Rat epsilon_;
  Rat delta_;
  bool has_delta_ = false;
};

// Nonempty subsets of X are bitmasks over nx <= 20 bits.
using SetMask = std::uint32_t;

// Sparse primal weights: w_A over nonempty A, and w_{A,y,z}.
struct PrimalSolution {
  int nx = 0, ny = 0, nz = 0;
  std::map<SetMask, Rat> set_weights;
  std::map<std::tuple<SetMask, int, int>, Rat> cell_weights;
  Rat value;  // sum of set weights

  std::string to_text() const;
  static PrimalSolution from_text(const std::string& text);
};

// Dual multipliers: mu over defined cells, lambda_{A,y} (sparse, absent = 0),
// lambda_x free-signed. By weak duality a witness that verifies certifies
// value as a lower bound.
struct DualWitness {
  int nx = 0, ny = 0, nz = 0;
  std::map<std::pair<int, int>, Rat> mu;
  std::map<std::pair<SetMask, int>, Rat> lambda_ay;
  std::map<int, Rat> lambda_x;
  Rat value;

  std::string to_text() const;
  static DualWitness from_text(const std::string& text);
};

// The minimization program over weights w_A, w_{A,y,z}: covering equalities
// per x, distribution equalities per (A, y), correctness inequalities per
// defined cell. Column order: for each A ascending, the block
// [w_A, w_{A,0,0}, ..., w_{A,ny-1,nz-1}]. The empty set carries no
// constraint and is excluded. Throws CapExceeded past the variable cap.
ratlp::LinearProgram build_primal(const PartialFunction& f,
                                  const AccuracyParams& acc,
                                  const Caps& caps = {});

// The maximization program over mu_{x,y} >= 0, lambda_{A,y} >= 0 and free
// lambda_x. Its optimum equals build_primal's exactly (strong duality; the
// primal is feasible and bounded below by 1).
ratlp::LinearProgram build_dual(const PartialFunction& f,
                                const AccuracyParams& acc,
                                const Caps& caps = {});

struct PrtResult {
  Rat value;
  PrimalSolution solution;
  DualWitness witness;
};

// Computes the one-way eps-partition bound exactly, returning an optimal
// primal solution and a dual witness of equal value (both verify).
PrtResult compute_prt(const PartialFunction& f, const AccuracyParams& acc,
                      const Caps& caps = {});

// Exact check of every PrimalSolution requirement against (f, eps); lists
// violations with residuals.
CheckReport verify_solution(const PartialFunction& f, const AccuracyParams& acc,
                            const PrimalSolution& sol);

// Exact check of the DualWitness requirements (every subset enumerated). On
// pass, witness.value is a certified lower bound on the partition bound.
CheckReport verify_witness(const PartialFunction& f, const AccuracyParams& acc,
                           const DualWitness& wit);

}  // namespace prtb::prtlp

#endif  // PRTB_PRTLP_HPP_
