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

#include "leoris/beamforming.hpp"
#include "leoris/channel.hpp"
#include "leoris/doppler_ofdm.hpp"
#include "leoris/geometry.hpp"
#include "leoris/ris.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace leoris {

enum class Study {
    snr_case_study,  ///< transmit/RIS beamforming schemes, mean received SNR per N
    outage_sweep,    ///< OFDM outage probability under Doppler per N and elevation
};

std::string_view to_string(Study study) noexcept;
Study parse_study(std::string_view name);

/// Everything one Monte Carlo run depends on. Populated by the scenario loader;
/// validate() re-checks the physical ranges.
struct ScenarioConfig {
    std::string name = "scenario";
    Study study = Study::outage_sweep;

    double carrier_hz = 20e9;
    double altitude_km = 1000.0;
    std::vector<double> elevations_deg{30.0};
    Environment environment = Environment::dense_urban;

    std::size_t tx_antennas = 1;
    double tx_power_dbw = 0.0;
    double tx_gain_dbi = 0.0;  ///< per transmit antenna
    double rx_gain_dbi = 0.0;
    double noise_temperature_k = 290.0;

    std::size_t n_subcarriers = 4096;
    double bandwidth_hz = 245.76e6;
    std::size_t subcarrier_samples = 8;

    std::string fading_preset = "frequent_heavy_shadowing";
    ShadowedRicianParams fading{0.063, 0.739, 8.97e-4};
    bool deterministic_channel = false;  ///< unit channel coefficients, no fading or path loss
    LosTable los_table;

    RisPanel panel;  ///< n_elements is taken from the sweep list
    std::vector<std::size_t> n_elements{16};
    double ris_element_gain_dbi = 0.0;  ///< applied on each leg of the cascaded path

    bool direct_link = false;
    double clutter_loss_db = 0.0;  ///< direct link in its NLOS state

    // snr_case_study geometry: RIS carried by a second satellite
    double ris_altitude_km = 600.0;
    double ris_elevation_deg = 60.0;
    double isl_distance_km = 1000.0;
    double ris_user_clutter_loss_db = 0.0;

    // outage_sweep geometry: RIS on the ground near the user
    double ris_user_distance_km = 0.05;

    CompensationMode compensation;
    std::vector<double> rate_thresholds_bpcu{1.0};
    AoConfig optimizer;
    std::vector<Scheme> schemes{Scheme::ao_distributed};

    std::size_t trials = 1000;
    std::uint64_t master_seed = 1;
    std::uint64_t scenario_hash = 0;

    /// One message per violated constraint, each prefixed with the field name.
    std::vector<std::string> diagnostics() const;
    /// Throws std::invalid_argument carrying all diagnostics.
    void validate() const;

    LinkBudget budget() const;
    OfdmGrid grid() const;
    std::size_t max_elements() const;
};

struct SweepPoint {
    Scheme scheme = Scheme::ao_distributed;
    std::size_t n_elements = 0;
    double elevation_deg = 0.0;
    double f_d_hz = 0.0;
    double r_th_bpcu = 0.0;
    std::size_t trials = 0;  ///< outage observations (trials x subcarrier samples for outage sweeps)
    std::size_t outage_count = 0;
    double outage_prob = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double mean_snr_db = kSnrFloorDb;  ///< mean over linear SNR, then converted to dB
};

struct MonteCarloResult {
    std::vector<SweepPoint> rows;
    std::uint64_t scenario_hash = 0;
    std::uint64_t master_seed = 0;
};

struct RunOptions {
    unsigned workers = 1;
    std::size_t chunk_trials = 256;  ///< fixed work-item size; results do not depend on workers
};

/// Wilson score interval for a binomial proportion.
std::pair<double, double> confidence_interval(std::size_t successes, std::size_t trials, double level = 0.95);

/// Standard normal quantile.
double normal_quantile(double p);

/// Channels for the beamforming case study. Draws for trial t are shared by every
/// elevation and every N (smaller panels use the leading elements).
class CaseStudyChannels {
public:
    explicit CaseStudyChannels(const ScenarioConfig& cfg);

    /// Full-size realization (max_elements()) for one trial at one elevation.
    CascadedChannel draw(std::uint64_t trial, double elevation_deg) const;

private:
    ScenarioConfig cfg_;
    double isl_amplitude_;
    double ris_user_amplitude_;
    double ris_user_p_los_;
};

/// Channels for the outage sweep, drawn at a reference scale in which the
/// satellite path amplitude is 1. Multiply the effective channel by
/// satellite_amplitude(elevation) to place the link at a given elevation.
class OutageChannels {
public:
    explicit OutageChannels(const ScenarioConfig& cfg);

    /// One realization per subcarrier sample.
    std::vector<CascadedChannel> draw(std::uint64_t trial) const;
    double satellite_amplitude(double elevation_deg) const;

private:
    ScenarioConfig cfg_;
    double ris_user_amplitude_;
    double direct_ratio_;
};

MonteCarloResult run_outage_sweep(const ScenarioConfig& cfg, const RunOptions& options = {});
MonteCarloResult run_snr_case_study(const ScenarioConfig& cfg, const RunOptions& options = {});
MonteCarloResult run_study(const ScenarioConfig& cfg, const RunOptions& options = {});

}  // namespace leoris
