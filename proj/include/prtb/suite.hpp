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

#ifndef PRTB_SUITE_HPP_
#define PRTB_SUITE_HPP_

#include <string>
#include <vector>

#include "prtb/caps.hpp"
#include "prtb/fnspec.hpp"
#include "prtb/report.hpp"

namespace prtb::suite {

struct CorpusEntry {
  std::string name;
  fnspec::PartialFunction fn;
};

// The standard verification corpus: eq(1), eq(2), gt(1), gt(2), index(2),
// five seeded random 3x3 partials at density 2/3, and the constant 2x2.
std::vector<CorpusEntry> corpus();

// Cross-module exact verification over the corpus. Each function returns a
// report with one line per checked inequality.
Report check_strong_duality(const Caps& caps = {});
Report check_weights_protocol_equivalence(const Caps& caps = {});
Report check_message_guessing(const Caps& caps = {});
Report check_boosting(const Caps& caps = {});
Report check_sandwich(const Caps& caps = {});
Report check_point_values(const Caps& caps = {});
Report check_properties(const Caps& caps = {});

// Runs everything; the CLI `suite` command prints this.
Report run_all(const Caps& caps = {});

}  // namespace prtb::suite

#endif  // PRTB_SUITE_HPP_
