// msrf/cli.h

// Copyright 2026 The msrf Authors.
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

// The msrf command-line tool. Exit codes: 0 success, 1 data error,
// 2 configuration or usage error.

#ifndef MSRF_CLI_H_
#define MSRF_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace msrf {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitConfig = 2;

int run_cli(int argc, char** argv);

/// In-process entry point; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace msrf

#endif  // MSRF_CLI_H_
