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

#ifndef PRTB_RATLP_HPP_
#define PRTB_RATLP_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "prtb/caps.hpp"
#include "prtb/rational.hpp"
#include "prtb/report.hpp"

namespace prtb::ratlp {

enum class Sense { kMin, kMax };
enum class Relation { kLe, kEq, kGe };
enum class VarBound { kNonNegative, kFree };

// One sparse coefficient.
struct Term {
  int var;
  Rat coeff;
};

using SparseRow = std::vector<Term>;

struct Constraint {
  SparseRow row;
  Relation rel;
  Rat rhs;
};

// Exact-rational LP in sparse form.
struct LinearProgram {
  int num_vars = 0;
  Sense sense = Sense::kMin;
  SparseRow objective;
  std::vector<Constraint> constraints;
  std::vector<VarBound> var_bounds;  // size num_vars

  // Detects malformed programs: out-of-range indices, duplicate indices in a
  // row, wrong bound count, variables referenced nowhere.
  CheckReport validate() const;

  // Line-oriented debug dump (objective row, then constraint rows, rationals
  // as "p/q"). Not a stability-guaranteed format.
  std::string to_text() const;
};

enum class LPStatus { kOptimal, kInfeasible, kUnbounded };

struct LPOutcome {
  LPStatus status;
  Rat value;               // meaningful iff status == kOptimal
  std::vector<Rat> primal; // one entry per variable, iff optimal
  std::vector<Rat> dual;   // one multiplier per constraint, iff optimal
};

struct SolveOptions {
  std::int64_t pivot_cap = 10'000'000;
  // Consecutive degenerate pivots before switching to Bland's rule; the rule
  // resets to largest-coefficient once the objective strictly improves.
  int degeneracy_trip = 64;
};

// Two-phase primal simplex over exact rationals. Deterministic: a fixed
// pivot rule and no randomized tie-breaking, so identical inputs give
// identical outcomes. Throws CapExceeded when the pivot budget runs out.
//
// Dual sign convention, for a Min program: value = sum_i dual[i]*rhs[i];
// dual[i] >= 0 for >= rows, <= 0 for <= rows, free for = rows; and for every
// variable j, sum_i dual[i]*A[i][j] <= c[j] with equality required for free
// variables. For a Max program all three conditions flip direction.
LPOutcome solve(const LinearProgram& lp, const SolveOptions& opts = {});

// Exact feasibility check of a point: lists every violated constraint and
// variable bound with its residual. Throws InputError on dimension mismatch.
CheckReport check_point(const LinearProgram& lp, const std::vector<Rat>& point);

// Exact optimality certificate check for a solved program: primal
// feasibility, dual feasibility (sign conditions and reduced costs), equal
// objective values, and complementary slackness. Used by tests and the
// verification suite; empty report means the outcome is certified.
CheckReport check_certificate(const LinearProgram& lp, const LPOutcome& out);

}  // namespace prtb::ratlp

#endif  // PRTB_RATLP_HPP_
