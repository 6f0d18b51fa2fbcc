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

#ifndef PRTB_REPORT_HPP_
#define PRTB_REPORT_HPP_

#include <string>
#include <vector>

#include "prtb/rational.hpp"

namespace prtb {

// One checked inequality: name, left value, comparator, right value, verdict.
struct CheckLine {
  std::string name;
  std::string lhs;
  std::string cmp;
  std::string rhs;
  bool pass = false;
};

// A verification report: ordered check lines plus free-form context notes.
// to_text() is stable (machine-diffable).
struct Report {
  std::vector<std::string> notes;
  std::vector<CheckLine> checks;

  void note(std::string text) { notes.push_back(std::move(text)); }
  void check(std::string name, std::string lhs, std::string cmp,
             std::string rhs, bool pass) {
    checks.push_back({std::move(name), std::move(lhs), std::move(cmp),
                      std::move(rhs), pass});
  }
  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::string to_text() const;
  // Appends another report's lines, prefixing check names.
  void absorb(const std::string& prefix, const Report& other);
};

// An exact constraint violation: which requirement failed and by how much.
struct Violation {
  std::string where;
  Rat residual;  // exact amount by which the requirement is missed
  std::string detail;
};

struct CheckReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string where, Rat residual, std::string detail = "") {
    violations.push_back({std::move(where), std::move(residual),
                          std::move(detail)});
  }
  std::string to_text() const;
};

}  // namespace prtb

#endif  // PRTB_REPORT_HPP_
