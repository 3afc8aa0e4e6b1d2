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

#pragma once

#include "leoris/sim_engine.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace leoris {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitIo = 2,
    kExitValidation = 3,
    kExitSimulation = 4,
};

/// Fixed results.csv header, in column order.
inline constexpr std::string_view kResultsCsvHeader =
    "scheme,n_elements,elevation_deg,f_d_hz,r_th_bpcu,trials,outage_count,outage_prob,ci_low,ci_high,mean_snr_db,seed";

/// Rows in result order (scheme, then N, then elevation, then threshold). Plain
/// numbers carry 9 significant digits; probabilities are in scientific notation.
void write_results_csv(std::ostream& out, const MonteCarloResult& result);
std::string format_results_csv(const MonteCarloResult& result);

struct RunManifest {
    std::string tool_version;
    std::string scenario_name;
    std::string study;
    std::uint64_t scenario_hash = 0;
    std::uint64_t master_seed = 0;
    std::string started_utc;
    std::string finished_utc;
    unsigned workers = 1;
    std::size_t subcarrier_samples = 0;
    std::string scenario_json;  ///< effective, self-contained scenario
};

std::string format_manifest(const RunManifest& manifest);

struct CliOptions {
    std::filesystem::path out_dir = "results";
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::optional<std::size_t> subcarrier_samples;
};

/// LEORIS_WORKERS if set to a positive integer, else 1.
unsigned default_workers();

std::string tool_version();

int validate_command(const std::filesystem::path& scenario, std::ostream& out, std::ostream& err);
/// Writes <out_dir>/results.csv and <out_dir>/manifest.json.
int run_command(const std::filesystem::path& scenario, const CliOptions& options, std::ostream& out,
                std::ostream& err);
/// Runs each scenario into <out_dir>/<scenario stem>/. Returns the first non-zero exit code.
int sweep_command(const std::vector<std::filesystem::path>& scenarios, const CliOptions& options, std::ostream& out,
                  std::ostream& err);

}  // namespace leoris
