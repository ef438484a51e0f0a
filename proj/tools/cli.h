// Copyright 2026 The CCL Authors.
//
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

#ifndef CCL_TOOLS_CLI_H_
#define CCL_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace ccl::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitMissingEmbeddings = 2;
inline constexpr int kExitMalformedInput = 3;
inline constexpr int kExitUsage = 64;

// Runs one command line. `args` excludes the program name. Human summaries
// go to `out`, diagnostics to `err`; machine output goes to files.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace ccl::cli

#endif  // CCL_TOOLS_CLI_H_
