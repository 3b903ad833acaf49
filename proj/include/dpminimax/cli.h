// Copyright 2026 The dpminimax Authors.
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

#ifndef DPMINIMAX_CLI_H_
#define DPMINIMAX_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace dpminimax {

inline constexpr int kExitOk = 0;
inline constexpr int kExitChecked = 1;
inline constexpr int kExitUsage = 2;

// Runs the command line `args` (without the program name). Returns 0 on
// success, 1 on a checked failure (violation, infeasible or over-cap
// instance), 2 on a usage error.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace dpminimax

#endif  // DPMINIMAX_CLI_H_
