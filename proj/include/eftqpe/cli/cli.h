// Copyright 2026 The eftqpe Authors
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

#ifndef EFTQPE_CLI_CLI_H
#define EFTQPE_CLI_CLI_H

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eftqpe/hamiltonian/h2.h"
#include "eftqpe/resources/resources.h"
#include "eftqpe/util/kv.h"

namespace eftqpe {

enum ExitCode { kExitOk = 0, kExitTargetMissed = 1, kExitConfig = 2, kExitInfeasible = 3, kExitInconclusive = 4 };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Protocol row selector: a ProtocolKind plus the reduced-J flag ("rpe-reduced").
struct ProtocolChoice {
    ProtocolKind kind = ProtocolKind::RPE;
    bool reduced_j = false;
    std::string label;
};
ProtocolChoice parse_protocol_choice(const std::string &name);

struct RunConfig {
    std::string mode = "simulate";
    std::string hamiltonian_path;
    std::string factories_path;
    std::vector<ProtocolChoice> protocols;
    std::vector<double> gammas;
    std::vector<double> eps;
    double p = 1e-3;
    uint64_t seed = 1;
    int runs = 10;
    /// "searched": noise of the minimal code distance; "none": noiseless.
    std::string noise = "searched";
    std::string out_dir;
    ResourceConfig resources;
    TrotterConfig trotter;
    int bias_j = 0;  // 0: the RPE planner's J at the first eps
    std::vector<int64_t> bias_ns = {1000, 4000, 16000, 64000, 256000};
    int bias_seeds = 10;
    std::string circuit_path;
    std::string sequences_path;
    /// Canonical `key = value` text of the resolved configuration.
    std::string canonical;
};

/// Built-in defaults, then the file (if any), then `overrides` in order. Relative paths in a
/// file resolve against the file's directory. Throws ConfigError naming the bad field.
RunConfig load_run_config(const std::string &path, const std::vector<std::pair<std::string, std::string>> &overrides);

uint64_t fnv1a64(const std::string &text);

/// Workers for independent jobs: EFTQPE_THREADS if set, else the hardware concurrency.
size_t worker_count();
/// Runs job(i) for i in [0, n) on the worker pool; results are the caller's to merge by index.
void parallel_for(size_t n, const std::function<void(size_t)> &job);

std::string csv_field(const std::string &s);

int cmd_simulate(const RunConfig &cfg, std::ostream &log);
int cmd_plan(const RunConfig &cfg, std::ostream &log);
int cmd_resources(const RunConfig &cfg, std::ostream &log);
int cmd_sweep(const RunConfig &cfg, std::ostream &log);
int cmd_bias(const RunConfig &cfg, std::ostream &log);
int cmd_validate(const RunConfig &cfg, std::ostream &log);
/// Dispatches on cfg.mode.
int run_mode(const RunConfig &cfg, std::ostream &log);

}  // namespace eftqpe

#endif
