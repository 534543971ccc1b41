// Copyright 2026 The shallowsep Authors
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

#ifndef SHALLOWSEP_CLI_H
#define SHALLOWSEP_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace shallowsep {

enum ExitCode : int {
    kExitOk = 0,
    kExitIoError = 1,      // unreadable input, unwritable output, or an unexpected runtime error
    kExitConfigError = 2,  // bad flags or config
    kExitAssertFailed = 3  // --assert given and the run's check failed
};

/// Runs one subcommand. args excludes the program name. The one-line summary goes to out, errors to err.
///
/// Subcommands: game-value, msp-check, sc-threshold, bell-prep, ft-sweep, decode-netlist, lightcone,
/// audit-locality. Shared flags: --config, --out, --seed (default 1), --jobs (default: logical cores), --assert.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace shallowsep

#endif
