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

#include <iostream>

#include <CLI11.hpp>

#include "eftqpe/cli/cli.h"

int main(int argc, char **argv) {
    CLI::App app{"eftqpe: phase estimation simulator and surface-code resource estimator"};
    std::string config, protocol, gamma, eps, p, seed, out, mode;
    app.add_option("--config", config, "flat key = value run configuration");
    app.add_option("--mode", mode, "simulate, plan, resources, sweep, bias or validate");
    app.add_option("--protocol", protocol, "qpe, ipe, rpe, qcels, mmqcels, rpe-reduced, all or table (comma list)");
    app.add_option("--gamma", gamma, "overlap values (comma list)");
    app.add_option("--eps", eps, "target errors in Hartree (comma list)");
    app.add_option("--p", p, "physical error rate");
    app.add_option("--seed", seed, "64-bit base seed");
    app.add_option("--out", out, "output directory (stdout when absent)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : eftqpe::kExitConfig;
    }

    std::vector<std::pair<std::string, std::string>> overrides;
    for (const auto &[key, value] : std::initializer_list<std::pair<const char *, const std::string *>>{
             {"mode", &mode}, {"protocol", &protocol}, {"gamma", &gamma}, {"eps", &eps},
             {"p", &p}, {"seed", &seed}, {"out", &out}}) {
        if (!value->empty()) {
            overrides.push_back({key, *value});
        }
    }
    eftqpe::RunConfig cfg;
    try {
        cfg = eftqpe::load_run_config(config, overrides);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return eftqpe::kExitConfig;
    }
    try {
        return eftqpe::run_mode(cfg, std::cerr);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
