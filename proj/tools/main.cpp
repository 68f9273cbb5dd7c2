// Copyright 2026 The qbclab Authors
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

#include <iostream>
#include <string>
#include <vector>

#include "qbc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  qbc::CliResult result = qbc::run_cli(args);
  bool to_file = false;
  for (std::size_t i = 0; i < args.size(); ++i)
    if (args[i] == "--out" || args[i].rfind("--out=", 0) == 0) to_file = true;
  if (result.exit_code == 2) {
    std::cerr << result.output;
  } else if (!to_file || result.exit_code != 0) {
    std::cout << result.output;
  }
  return result.exit_code;
}
