// Copyright 2026 The tablesynth Authors. All rights reserved.
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

#ifndef TABLESYNTH_TOOLS_CLI_H_
#define TABLESYNTH_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace tablesynth::cli {

// Exit codes of the solve subcommand.
inline constexpr int kExitFound = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotFound = 2;
inline constexpr int kExitTimedOut = 3;

// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tablesynth::cli

#endif  // TABLESYNTH_TOOLS_CLI_H_
