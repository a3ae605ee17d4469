// Copyright 2026 The anonaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ANONAUDIT_CLI_HPP
#define ANONAUDIT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace anonaudit {

// Exit codes are a stable contract:
//   0 success (all thresholds met, for check)
//   1 usage error
//   2 input/parse error
//   3 schema error
//   4 at least one threshold not met (check)
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitSchema = 3;
inline constexpr int kExitCheckFailed = 4;

// Full CLI entry point; args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace anonaudit

#endif  // ANONAUDIT_CLI_HPP
