// Copyright 2026 The rehab-extract Authors.
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


// Command line front end. Execute() is the whole program minus process
// setup, so tests can drive it in-process.

#ifndef REHAB_TOOLS_CLI_H_
#define REHAB_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace rehab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

// Runs one command. `args` excludes the program name. Data goes to `out`,
// diagnostics and usage errors to `err`.
int Execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int Execute(const std::vector<std::string>& args);

}  // namespace rehab::cli

#endif  // REHAB_TOOLS_CLI_H_
