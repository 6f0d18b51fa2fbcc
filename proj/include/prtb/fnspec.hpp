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

#ifndef PRTB_FNSPEC_HPP_
#define PRTB_FNSPEC_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "prtb/rational.hpp"

namespace prtb::fnspec {

// A partial function f : X x Y -> Z over 0-based integer ranges.
// Immutable after construction; safe to share between threads.
class PartialFunction {
 public:
  static constexpr int kUndefined = -1;

  // table is row-major (x major, y minor), entries in [0, nz) or kUndefined.
  PartialFunction(int nx, int ny, int nz, std::vector<int> table);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }

  bool defined(int x, int y) const { return table_[idx(x, y)] != kUndefined; }
  // Value of a defined cell; call only when defined(x, y).
  int value(int x, int y) const { return table_[idx(x, y)]; }

  // Cells of the defined set, row-major. The position of a cell in this list
  // is its canonical index (used for error vectors and reports).
  const std::vector<std::pair<int, int>>& defined_cells() const {
    return defined_cells_;
  }

  const std::vector<int>& table() const { return table_; }

  bool operator==(const PartialFunction& other) const = default;

 private:
  int idx(int x, int y) const { return x * ny_ + y; }

  int nx_, ny_, nz_;
  std::vector<int> table_;
  std::vector<std::pair<int, int>> defined_cells_;
};

// Parses the `.pfn` text format. Line 1: "pfn v1". Line 2: "<nx> <ny> <nz>".
// Then nx rows of ny tokens, each a value in [0, nz) or '*' for undefined.
// Lines starting with '#' are ignored. Errors carry line numbers.
// nx > 20 is rejected as a resource cap (subset enumeration downstream).
PartialFunction parse_function(const std::string& text);

std::string serialize_function(const PartialFunction& f);

// Standard generators: eq(n) and gt(n) are 2^n x 2^n boolean totals,
// index(n) is 2^n x n, random(n, density, seed) is n x n with each cell
// independently defined with the given rational probability.
struct GenParams {
  Rat density = Rat(1);
  std::uint64_t seed = 0;
};

PartialFunction generate(const std::string& kind, int n,
                         const GenParams& params = {});

// Relabels rows and columns; perm_x[i] is the new position of row i.
PartialFunction permute(const PartialFunction& f,
                        const std::vector<int>& perm_x,
                        const std::vector<int>& perm_y);

}  // namespace prtb::fnspec

#endif  // PRTB_FNSPEC_HPP_
