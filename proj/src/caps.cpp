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

#include "prtb/caps.hpp"

#include <cstdlib>
#include <string>

namespace prtb {

namespace {

void load_int64(const char* name, std::int64_t* target) {
  if (const char* v = std::getenv(name)) {
    try {
      *target = std::stoll(v);
    } catch (const std::exception&) {
      throw InputError(std::string(name) + ": not an integer: '" + v + "'");
    }
  }
}

void load_int(const char* name, int* target) {
  std::int64_t wide = *target;
  load_int64(name, &wide);
  *target = static_cast<int>(wide);
}

}  // namespace

Caps Caps::from_env() {
  Caps caps;
  load_int64("PRTB_MAX_LP_VARS", &caps.max_lp_vars);
  load_int64("PRTB_PIVOT_CAP", &caps.pivot_cap);
  load_int64("PRTB_MAX_RAW_MSG_FNS", &caps.max_raw_msg_fns);
  load_int64("PRTB_MAX_STRATEGIES", &caps.max_strategies);
  load_int64("PRTB_MAX_BOOST_T", &caps.max_boost_t);
  load_int("PRTB_MAX_RCC_CELLS", &caps.max_rcc_cells);
  load_int("PRTB_MAX_RCC_C", &caps.max_rcc_c);
  return caps;
}

}  // namespace prtb
