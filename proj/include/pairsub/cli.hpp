// Copyright 2026 The pairsub Authors.
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

#ifndef PAIRSUB_CLI_HPP_
#define PAIRSUB_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace pairsub {

// Runs the command line (without the program name). Returns the exit code:
// 0 when the command completed, nonzero on usage or operational errors.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pairsub

#endif  // PAIRSUB_CLI_HPP_
