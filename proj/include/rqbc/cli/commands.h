// Copyright 2026 The rqbc Authors
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

#ifndef RQBC_CLI_COMMANDS_H_
#define RQBC_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "rqbc/cli/config.h"

namespace rqbc::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitInvariant = 2,
    kExitConfig = 3,
};

struct CommonOptions {
    std::string config_path;
    std::optional<uint64_t> seed;
    std::string out;
    std::string format = "csv";
    int jobs = 1;
};

struct SweepOptions : CommonOptions {
    std::string spectrum_path;  // optional (index, eigenvalue) dump
};

struct AttackOptions : CommonOptions {
    std::string strategy;  // overrides the config key when non-empty
    std::optional<double> tau0;
};

struct ValidateOptions : CommonOptions {
    bool inject_corruption = false;
};

/// Rows (delta, T, shape, p_detect, p_perp, alpha_eff), or with
/// `table = outcomes` rows (family, T, delta, k1, k2, p1, p2, p_perp).
void sweep(const ConfigDoc &config, const SweepOptions &options, std::ostream &out);

/// Protocol Monte Carlo. CSV rows (seed, N, T_probe, T_open, family,
/// adversary, success, aborted); with format json, one transcript per run,
/// written as run_NNNNNN.json under options.out or as JSON lines to `out`.
/// Throws InvariantError if a run breaks a protocol invariant.
void run(const ConfigDoc &config, const CommonOptions &options, std::ostream &out);

/// Rows (strategy, param, N, T, q, detection_prob, P_ind, P_coll, P_guess).
void attack(const ConfigDoc &config, const AttackOptions &options, std::ostream &out);

/// POVM audits and oracle agreement over a built-in grid. Returns true when
/// every check passes.
bool validate(const ValidateOptions &options, std::ostream &out);

/// Full command line entry point; returns the process exit code.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace rqbc::cli

#endif  // RQBC_CLI_COMMANDS_H_
