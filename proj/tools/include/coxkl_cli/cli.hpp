// Copyright 2026 The coxkl Authors.
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

#ifndef COXKL_CLI_CLI_HPP_
#define COXKL_CLI_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace coxkl::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;      // verification found a counterexample
inline constexpr int kUsage = 2;       // bad flags or input
inline constexpr int kInternal = 3;    // internal consistency failure

// Environment variable holding the default worker count.
inline constexpr const char* kThreadsEnv = "COXKL_THREADS";

// Runs the command line `args` (args[0] is the program name), writing results
// to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coxkl::cli

#endif  // COXKL_CLI_CLI_HPP_
