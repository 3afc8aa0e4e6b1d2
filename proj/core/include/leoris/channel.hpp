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

#include "leoris/rng.hpp"

#include <array>
#include <complex>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace leoris {

using Complex = std::complex<double>;

inline constexpr double kBoltzmann = 1.380649e-23;

/// Shadowed-Rician (Abdi) fading: LOS amplitude is Nakagami-m with spread omega,
/// scatter is CN(0, 2b). E|h|^2 = 2b + omega.
struct ShadowedRicianParams {
    double b = 0.0;
    double m = 1.0;
    double omega = 0.0;

    void validate() const;
    double mean_power() const noexcept { return 2.0 * b + omega; }
};

enum class Environment { dense_urban, urban, suburban_rural };

inline constexpr std::array kAllEnvironments{Environment::dense_urban, Environment::urban,
                                             Environment::suburban_rural};

std::string_view to_string(Environment env) noexcept;
/// Throws std::invalid_argument on unknown names.
Environment parse_environment(std::string_view name);

/// Elevation-indexed LOS probabilities per environment, 10..90 deg in 10 deg steps.
///
/// Text format, one row per line, whitespace separated, '#' starts a comment:
///
///     environment  elevation_deg  p_los
///     dense_urban  10             0.282
///
/// The first non-comment line may be the column header above.
class LosTable {
public:
    static constexpr std::array<double, 9> kGridDeg{10, 20, 30, 40, 50, 60, 70, 80, 90};

    static LosTable parse(std::istream& in);
    static LosTable load(const std::filesystem::path& path);

    /// Node value; throws if the table has no entry there.
    double at(Environment env, double elevation_deg) const;
    /// Linear interpolation between grid nodes.
    double interpolate(Environment env, double elevation_deg) const;

private:
    std::map<Environment, std::array<double, 9>> table_;
};

struct LinkBudget {
    double tx_power_dbw = 0.0;
    double tx_antenna_gain_dbi = 0.0;
    double rx_antenna_gain_dbi = 0.0;
    double noise_temperature_k = 290.0;
    double bandwidth_hz = 1.0;

    void validate() const;
    double tx_power_w() const;
    double noise_power_w() const;
};

/// Free-space path loss in dB, carrier in Hz and distance in km.
double fspl_db(double carrier_hz, double distance_km);

/// Throws std::domain_error below 10 deg or above 90 deg.
double los_probability(double elevation_deg, Environment env, const LosTable& table);

Complex sample_shadowed_rician(const ShadowedRicianParams& params, RandomStream& rng);
Complex sample_rayleigh(double mean_power, RandomStream& rng);

/// 10 log10(k T B) for the budget's noise temperature.
double noise_power_dbw(const LinkBudget& budget, double bandwidth_hz);

/// Named shadowed-Rician presets loaded from a table with columns: name b m omega.
class FadingPresets {
public:
    static FadingPresets parse(std::istream& in);
    static FadingPresets load(const std::filesystem::path& path);

    bool contains(std::string_view name) const;
    /// Throws std::out_of_range for unknown names.
    const ShadowedRicianParams& get(std::string_view name) const;
    std::vector<std::string> names() const;

private:
    std::map<std::string, ShadowedRicianParams, std::less<>> presets_;
};

double db_to_linear(double db);
double linear_to_db(double linear);

}  // namespace leoris
