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

#include "prtb/report.hpp"

#include <sstream>

namespace prtb {

std::string Report::to_text() const {
  std::ostringstream os;
  for (const auto& n : notes) os << "# " << n << "\n";
  for (const auto& c : checks) {
    os << c.name << ": " << c.lhs << " " << c.cmp << " " << c.rhs << " "
       << (c.pass ? "PASS" : "FAIL") << "\n";
  }
  return os.str();
}

void Report::absorb(const std::string& prefix, const Report& other) {
  for (const auto& n : other.notes) notes.push_back(prefix + ": " + n);
  for (auto c : other.checks) {
    c.name = prefix + "." + c.name;
    checks.push_back(std::move(c));
  }
}

std::string CheckReport::to_text() const {
  if (violations.empty()) return "feasible\n";
  std::ostringstream os;
  for (const auto& v : violations) {
    os << "violated " << v.where << " residual " << rat_str(v.residual);
    if (!v.detail.empty()) os << " (" << v.detail << ")";
    os << "\n";
  }
  return os.str();
}

}  // namespace prtb
