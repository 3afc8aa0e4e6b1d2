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

#include "leoris/run_io.hpp"

#include "leoris/scenario.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

namespace leoris {

using json = nlohmann::json;

namespace {

std::string fmt(const char* format, double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, format, value);
    return buf;
}

std::string utc_now()
{
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string hex64(std::uint64_t v)
{
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ScenarioIoError("cannot write " + path.string());
    out << text;
    if (!out.flush()) throw ScenarioIoError("write failed for " + path.string());
}

void print_diagnostics(std::ostream& err, const std::filesystem::path& scenario, const std::vector<std::string>& d)
{
    err << scenario.string() << ": invalid scenario\n";
    for (const auto& line : d) err << "  " << line << '\n';
}

/// Runs one scenario into CMakeLists.txt	cmake  include	src. Returns an exit code.
int run_into(const std::filesystem::path& scenario, const std::filesystem::path& dir, const CliOptions& options,
             std::ostream& out, std::ostream& err)
{
    ScenarioOverrides overrides;
    overrides.master_seed = options.seed;
    overrides.subcarrier_samples = options.subcarrier_samples;

    LoadedScenario loaded;
    try {
        loaded = load_scenario(scenario, overrides);
    } catch (const ScenarioIoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ScenarioValidationError& e) {
        print_diagnostics(err, scenario, e.diagnostics());
        return kExitValidation;
    }

    RunManifest manifest;
    manifest.tool_version = tool_version();
    manifest.scenario_name = loaded.config.name;
    manifest.study = std::string(to_string(loaded.config.study));
    manifest.scenario_hash = loaded.config.scenario_hash;
    manifest.master_seed = loaded.config.master_seed;
    manifest.workers = options.workers.value_or(default_workers());
    manifest.subcarrier_samples = loaded.config.subcarrier_samples;
    manifest.scenario_json = loaded.canonical_json;
    manifest.started_utc = utc_now();

    MonteCarloResult result;
    try {
        RunOptions run_options;
        run_options.workers = manifest.workers;
        result = run_study(loaded.config, run_options);
    } catch (const std::exception& e) {
        err << "simulation error: " << e.what() << '\n';
        return kExitSimulation;
    }
    manifest.finished_utc = utc_now();

    try {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw ScenarioIoError("cannot create " + dir.string() + ": " + ec.message());
        write_text(dir / "results.csv", format_results_csv(result));
        write_text(dir / "manifest.json", format_manifest(manifest));
    } catch (const ScenarioIoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    out << loaded.config.name << ": " << result.rows.size() << " rows -> " << (dir / "results.csv").string() << '\n';
    return kExitOk;
}

}  // namespace

void write_results_csv(std::ostream& out, const MonteCarloResult& result)
{
    out << kResultsCsvHeader << '\n';
    for (const auto& r : result.rows) {
        out << to_string(r.scheme) << ',' << r.n_elements << ',' << fmt("%.9g", r.elevation_deg) << ','
            << fmt("%.9g", r.f_d_hz) << ',' << fmt("%.9g", r.r_th_bpcu) << ',' << r.trials << ',' << r.outage_count
            << ',' << fmt("%.8e", r.outage_prob) << ',' << fmt("%.8e", r.ci_low) << ',' << fmt("%.8e", r.ci_high)
            << ',' << fmt("%.9g", r.mean_snr_db) << ',' << result.master_seed << '\n';
    }
}

std::string format_results_csv(const MonteCarloResult& result)
{
    std::ostringstream s;
    write_results_csv(s, result);
    return s.str();
}

std::string format_manifest(const RunManifest& m)
{
    json doc = {
        {"tool_version", m.tool_version},
        {"scenario_name", m.scenario_name},
        {"study", m.study},
        {"scenario_hash", hex64(m.scenario_hash)},
        {"master_seed", m.master_seed},
        {"started_utc", m.started_utc},
        {"finished_utc", m.finished_utc},
        {"workers", m.workers},
        {"subcarrier_samples", m.subcarrier_samples},
        {"scenario", m.scenario_json.empty() ? json::object() : json::parse(m.scenario_json)},
    };
    return doc.dump(2) + "\n";
}

unsigned default_workers()
{
    if (const char* env = std::getenv("LEORIS_WORKERS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    return 1;
}

std::string tool_version() { return LEORIS_VERSION; }

int validate_command(const std::filesystem::path& scenario, std::ostream& out, std::ostream& err)
{
    const auto report = validate_scenario(scenario);
    if (report.io_error) {
        for (const auto& d : report.diagnostics) err << "error: " << d << '\n';
        return kExitIo;
    }
    if (!report.ok()) {
        print_diagnostics(err, scenario, report.diagnostics);
        return kExitValidation;
    }
    out << scenario.string() << ": ok\n";
    return kExitOk;
}

int run_command(const std::filesystem::path& scenario, const CliOptions& options, std::ostream& out, std::ostream& err)
{
    return run_into(scenario, options.out_dir, options, out, err);
}

int sweep_command(const std::vector<std::filesystem::path>& scenarios, const CliOptions& options, std::ostream& out,
                  std::ostream& err)
{
    // keep going so one bad file does not hide the others; report the first failure code
    int status = kExitOk;
    for (const auto& s : scenarios) {
        const int rc = run_into(s, options.out_dir / s.stem(), options, out, err);
        if (rc != kExitOk && status == kExitOk) status = rc;
    }
    return status;
}

}  // namespace leoris
