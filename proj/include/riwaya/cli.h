// Copyright 2026 The Riwaya Authors.
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

#ifndef RIWAYA_CLI_H_
#define RIWAYA_CLI_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace riwaya {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitIo = 3,
};

// Runs one `riwaya` invocation. `args` excludes the program name.
// `env_store` stands in for the RIWAYA_STORE environment variable; an
// explicit --store wins over it.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err, std::optional<std::string> env_store = std::nullopt);

}  // namespace riwaya

#endif  // RIWAYA_CLI_H_
