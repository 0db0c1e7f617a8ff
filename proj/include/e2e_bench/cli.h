// Copyright 2026 The E2E Bench Authors.
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

#ifndef E2E_BENCH_CLI_H_
#define E2E_BENCH_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace e2e_bench {

// Process exit codes. Stable; scripts depend on them.
enum ExitCode : int {
  kExitOk = 0,
  // Bad input: corpus, vocabulary, usage, run mismatch, unknown metric,
  // statistics precondition.
  kExitInput = 1,
  // Embedding provider failed (after retries for http).
  kExitProvider = 2,
  // Filesystem error, including refusing to overwrite a run.
  kExitIo = 3,
};

inline constexpr const char* kSidecarUrlEnv = "E2E_BENCH_SIDECAR_URL";

// Entry point of the e2e_bench tool; args[0] is the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace e2e_bench

#endif  // E2E_BENCH_CLI_H_
