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

#include "leoris/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace leoris {

void ShadowedRicianParams::validate() const
{
    if (!(b > 0.0)) throw std::domain_error("shadowed-Rician b must be > 0");
    if (!(m > 0.0)) throw std::domain_error("shadowed-Rician m must be > 0");
    if (!(omega >= 0.0)) throw std::domain_error("shadowed-Rician omega must be >= 0");
}

std::string_view to_string(Environment env) noexcept
{
    switch (env) {
    case Environment::dense_urban: return "dense_urban";
    case Environment::urban: return "urban";
    case Environment::suburban_rural: return "suburban_rural";
    }
    return "unknown";
}

Environment parse_environment(std::string_view name)
{
    for (auto env : kAllEnvironments) {
        if (to_string(env) == name) return env;
    }
    throw std::invalid_argument("unknown environment '" + std::string(name) + "'");
}

namespace {

std::size_t grid_index(double elevation_deg)
{
    for (std::size_t i = 0; i < LosTable::kGridDeg.size(); ++i) {
        if (LosTable::kGridDeg[i] == elevation_deg) return i;
    }
    return LosTable::kGridDeg.size();
}

// Strips '#' comments and surrounding whitespace.
std::string strip_line(const std::string& raw)
{
    auto line = raw.substr(0, raw.find('#'));
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = line.find_last_not_of(" \t\r");
    return line.substr(first, last - first + 1);
}

}  // namespace

LosTable LosTable::parse(std::istream& in)
{
    LosTable out;
    std::map<Environment, std::array<bool, 9>> seen;
    std::string raw;
    int lineno = 0;
    bool first_row = true;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto line = strip_line(raw);
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string env_name;
        double elev = 0.0;
        double p = 0.0;
        row >> env_name;
        if (first_row && env_name == "environment") {
            first_row = false;
            continue;
        }
        first_row = false;
        if (!(row >> elev >> p)) {
            throw std::invalid_argument("LOS table line " + std::to_string(lineno) + ": expected 3 columns");
        }
        const auto env = parse_environment(env_name);
        const auto idx = grid_index(elev);
        if (idx == kGridDeg.size()) {
            throw std::invalid_argument("LOS table line " + std::to_string(lineno) +
                                        ": elevation must be on the 10..90 deg grid");
        }
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("LOS table line " + std::to_string(lineno) + ": p_los outside [0, 1]");
        }
        out.table_[env][idx] = p;
        seen[env][idx] = true;
    }
    if (out.table_.empty()) throw std::invalid_argument("LOS table is empty");
    for (const auto& [env, flags] : seen) {
        if (!std::all_of(flags.begin(), flags.end(), [](bool f) { return f; })) {
            throw std::invalid_argument("LOS table: incomplete grid for " + std::string(to_string(env)));
        }
        const auto& row = out.table_[env];
        if (!std::is_sorted(row.begin(), row.end())) {
            throw std::invalid_argument("LOS table: probabilities for " + std::string(to_string(env)) +
                                        " must be non-decreasing in elevation");
        }
    }
    return out;
}

LosTable LosTable::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open LOS table " + path.string());
    return parse(in);
}

double LosTable::at(Environment env, double elevation_deg) const
{
    const auto it = table_.find(env);
    const auto idx = grid_index(elevation_deg);
    if (it == table_.end() || idx == kGridDeg.size()) {
        throw std::out_of_range("LOS table has no node for this environment/elevation");
    }
    return it->second[idx];
}

double LosTable::interpolate(Environment env, double elevation_deg) const
{
    if (!(elevation_deg >= kGridDeg.front() && elevation_deg <= kGridDeg.back())) {
        throw std::domain_error("LOS probability is tabulated for elevations in [10, 90] deg");
    }
    const auto it = table_.find(env);
    if (it == table_.end()) {
        throw std::out_of_range("LOS table has no rows for " + std::string(to_string(env)));
    }
    const auto& row = it->second;
    const auto upper = std::lower_bound(kGridDeg.begin(), kGridDeg.end(), elevation_deg);
    const auto hi = static_cast<std::size_t>(upper - kGridDeg.begin());
    if (kGridDeg[hi] == elevation_deg) return row[hi];
    const auto lo = hi - 1;
    const double t = (elevation_deg - kGridDeg[lo]) / (kGridDeg[hi] - kGridDeg[lo]);
    return row[lo] + t * (row[hi] - row[lo]);
}

void LinkBudget::validate() const
{
    if (!(bandwidth_hz > 0.0)) throw std::domain_error("LinkBudget: bandwidth_hz must be > 0");
    if (!(noise_temperature_k > 0.0)) throw std::domain_error("LinkBudget: noise_temperature_k must be > 0");
}

double LinkBudget::tx_power_w() const { return db_to_linear(tx_power_dbw); }

double LinkBudget::noise_power_w() const { return kBoltzmann * noise_temperature_k * bandwidth_hz; }

double fspl_db(double carrier_hz, double distance_km)
{
    if (!(carrier_hz > 0.0) || !(distance_km > 0.0)) {
        throw std::domain_error("fspl_db: carrier and distance must be > 0");
    }
    return 92.45 + 20.0 * std::log10(carrier_hz / 1e9) + 20.0 * std::log10(distance_km);
}

double los_probability(double elevation_deg, Environment env, const LosTable& table)
{
    return table.interpolate(env, elevation_deg);
}

Complex sample_shadowed_rician(const ShadowedRicianParams& params, RandomStream& rng)
{
    std::normal_distribution<double> gauss(0.0, std::sqrt(params.b));
    const Complex scatter{gauss(rng), gauss(rng)};
    if (params.omega == 0.0) return scatter;
    // Nakagami-m amplitude: A^2 ~ Gamma(m, omega / m).
    std::gamma_distribution<double> gamma(params.m, params.omega / params.m);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    const double amplitude = std::sqrt(gamma(rng));
    return std::polar(amplitude, phase(rng)) + scatter;
}

Complex sample_rayleigh(double mean_power, RandomStream& rng)
{
    if (!(mean_power >= 0.0)) throw std::domain_error("sample_rayleigh: mean_power must be >= 0");
    if (mean_power == 0.0) return {};
    std::normal_distribution<double> gauss(0.0, std::sqrt(mean_power / 2.0));
    const double re = gauss(rng);
    const double im = gauss(rng);
    return {re, im};
}

double noise_power_dbw(const LinkBudget& budget, double bandwidth_hz)
{
    if (!(bandwidth_hz > 0.0)) throw std::domain_error("noise_power_dbw: bandwidth must be > 0");
    if (!(budget.noise_temperature_k > 0.0)) throw std::domain_error("noise_power_dbw: temperature must be > 0");
    return 10.0 * std::log10(kBoltzmann * budget.noise_temperature_k * bandwidth_hz);
}

FadingPresets FadingPresets::parse(std::istream& in)
{
    FadingPresets out;
    std::string raw;
    int lineno = 0;
    bool first_row = true;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto line = strip_line(raw);
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string name;
        row >> name;
        if (first_row && name == "name") {
            first_row = false;
            continue;
        }
        first_row = false;
        ShadowedRicianParams p;
        if (!(row >> p.b >> p.m >> p.omega)) {
            throw std::invalid_argument("fading presets line " + std::to_string(lineno) + ": expected 4 columns");
        }
        p.validate();
        out.presets_[name] = p;
    }
    return out;
}

FadingPresets FadingPresets::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fading presets " + path.string());
    return parse(in);
}

bool FadingPresets::contains(std::string_view name) const { return presets_.find(name) != presets_.end(); }

const ShadowedRicianParams& FadingPresets::get(std::string_view name) const
{
    const auto it = presets_.find(name);
    if (it == presets_.end()) throw std::out_of_range("unknown fading preset '" + std::string(name) + "'");
    return it->second;
}

std::vector<std::string> FadingPresets::names() const
{
    std::vector<std::string> out;
    for (const auto& [name, _] : presets_) out.push_back(name);
    return out;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace leoris
