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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace leoris {

/// Scenario file could not be read.
class ScenarioIoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario file was read but failed schema or range checks.
class ScenarioValidationError : public std::runtime_error {
public:
    explicit ScenarioValidationError(std::vector<std::string> diagnostics);
    const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

private:
    std::vector<std::string> diagnostics_;
};

struct LoadedScenario {
    ScenarioConfig config;
    /// Self-contained JSON of the effective scenario: data-file references are
    /// replaced by their contents, overrides are applied. Feeding it back to
    /// parse_scenario reproduces the run.
    std::string canonical_json;
};

/// Overrides applied after parsing and before validation.
struct ScenarioOverrides {
    std::optional<std::uint64_t> master_seed;
    std::optional<std::size_t> subcarrier_samples;
    std::optional<std::size_t> trials;
};

/// Parses a JSON scenario. Relative data-file paths resolve against base_dir.
LoadedScenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir,
                              const ScenarioOverrides& overrides = {});

/// Throws ScenarioIoError when the file is unreadable.
LoadedScenario load_scenario(const std::filesystem::path& path, const ScenarioOverrides& overrides = {});

struct ValidationReport {
    std::vector<std::string> diagnostics;
    bool io_error = false;

    bool ok() const noexcept { return diagnostics.empty(); }
};

ValidationReport validate_scenario(const std::filesystem::path& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace leoris
