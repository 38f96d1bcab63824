// Copyright 2026 The tailent Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: scenario loading, subcommand dispatch and artifact
// emission.

#ifndef TAILENT_CLI_HPP_
#define TAILENT_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace tailent {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitBudget = 3;

inline constexpr const char* kToolVersion = "1.0.0";

// `args` excludes the program name. Artifacts go to the --out directory.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tailent

#endif  // TAILENT_CLI_HPP_
