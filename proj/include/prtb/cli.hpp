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

#ifndef PRTB_CLI_HPP_
#define PRTB_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace prtb::cli {

// Exit statuses: 0 success / all checks pass, 1 verification failure,
// 2 usage or input error, 3 resource cap exceeded.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResourceCap = 3;

// Runs one subcommand. Reports go to `out`, diagnostics to `err`; `in`
// backs the "-" input path. Identical arguments (including seeds) produce
// byte-identical reports.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace prtb::cli

#endif  // PRTB_CLI_HPP_
