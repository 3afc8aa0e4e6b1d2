// SPDX-License-Identifier: Apache-2.0
//
// leoris: link-level simulation of RIS-assisted LEO satellite downlinks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Command-line front end: validate, run and sweep scenario files.

#include "leoris/run_io.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"leoris: RIS-assisted LEO downlink Monte Carlo simulator"};
    app.set_version_flag("--version", leoris::tool_version());
    app.require_subcommand(1);

    leoris::CliOptions options;
    std::filesystem::path scenario;
    std::vector<std::filesystem::path> scenarios;

    auto add_run_flags = [&](CLI::App* cmd) {
        cmd->add_option("--out,-o", options.out_dir, "Output directory")->capture_default_str();
        cmd->add_option("--seed", options.seed, "Override monte_carlo.master_seed");
        cmd->add_option("--workers,-j", options.workers, "Worker threads (default: $LEORIS_WORKERS or 1)")
            ->check(CLI::Range(1u, 1024u));
        cmd->add_option("--subcarrier-samples", options.subcarrier_samples,
                        "Override ofdm.subcarrier_samples")
            ->check(CLI::PositiveNumber);
    };

    auto* validate = app.add_subcommand("validate", "Check a scenario file and report every problem");
    validate->add_option("scenario", scenario, "Scenario JSON")->required();

    auto* run = app.add_subcommand("run", "Run one scenario, writing results.csv and manifest.json");
    run->add_option("scenario", scenario, "Scenario JSON")->required();
    add_run_flags(run);

    auto* sweep = app.add_subcommand("sweep", "Run several scenarios, one output subdirectory each");
    sweep->add_option("scenarios", scenarios, "Scenario JSON files")->required();
    add_run_flags(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? leoris::kExitOk : leoris::kExitUsage;
    }

    if (*validate) return leoris::validate_command(scenario, std::cout, std::cerr);
    if (*run) return leoris::run_command(scenario, options, std::cout, std::cerr);
    return leoris::sweep_command(scenarios, options, std::cout, std::cerr);
}
