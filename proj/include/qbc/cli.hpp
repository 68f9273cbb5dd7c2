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

#pragma once

#include <string>
#include <vector>

namespace qbc {

struct CliResult {
  /// 0 success, 1 invariant violation found during analysis, 2 usage error.
  int exit_code = 0;
  /// The full report text (JSON or CSV), or the diagnostic on usage errors.
  /// With --out the report is additionally written to that path.
  std::string output;
};

/// Runs one command line (without the program name) and returns its report.
/// Reruns with an identical argument list produce byte-identical output.
///
/// Subcommands:
///   bounds-scan  random evidence pairs tabulated against the guessing/
///                steering sandwich (--samples, --max-dim)
///   protocol     zoo analyses (--analysis conceal|bind|honest|psi-scan|
///                us-curve plus per-protocol flags)
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace qbc
