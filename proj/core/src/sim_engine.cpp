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

#include "leoris/sim_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace leoris {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Substream groups; keeps the two studies' draws unrelated for equal seeds.
constexpr std::uint64_t kCaseStudyGroup = 3;
constexpr std::uint64_t kOutageGroup = 4;

double amplitude_from_db(double gain_db) { return std::pow(10.0, gain_db / 20.0); }

/// Free-space amplitude gain between two antennas.
double link_amplitude(double carrier_hz, double distance_km, double gain_a_dbi, double gain_b_dbi)
{
    return amplitude_from_db(gain_a_dbi + gain_b_dbi - fspl_db(carrier_hz, distance_km));
}

CVector steering_vector(std::size_t m, double spatial_frequency)
{
    CVector a(static_cast<Eigen::Index>(m));
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        a[i] = std::polar(1.0, std::numbers::pi * static_cast<double>(i) * spatial_frequency);
    }
    return a;
}

struct Accumulator {
    std::vector<double> snr_sum;        // per point
    std::vector<std::size_t> outages;   // per point x threshold
    std::size_t observations = 0;       // per point

    Accumulator(std::size_t points, std::size_t thresholds) : snr_sum(points, 0.0), outages(points * thresholds, 0) {}
};

/// Runs fn(first_trial, last_trial, acc) over fixed chunks and reduces in chunk order.
template <class Fn>
Accumulator run_chunks(std::size_t trials, const RunOptions& options, std::size_t points, std::size_t thresholds,
                       Fn&& fn)
{
    const std::size_t chunk = std::max<std::size_t>(1, options.chunk_trials);
    const std::size_t n_chunks = (trials + chunk - 1) / chunk;
    std::vector<Accumulator> partial(n_chunks, Accumulator(points, thresholds));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            try {
                fn(c * chunk, std::min(trials, (c + 1) * chunk), partial[c]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(n_chunks);
                return;
            }
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(n_chunks)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    Accumulator total(points, thresholds);
    for (const auto& p : partial) {
        for (std::size_t i = 0; i < points; ++i) total.snr_sum[i] += p.snr_sum[i];
        for (std::size_t i = 0; i < total.outages.size(); ++i) total.outages[i] += p.outages[i];
        total.observations += p.observations;
    }
    return total;
}

struct PointLayout {
    std::size_t schemes;
    std::size_t sizes;
    std::size_t elevations;
    std::size_t thresholds;

    std::size_t points() const { return schemes * sizes * elevations; }
    std::size_t point(std::size_t s, std::size_t n, std::size_t e) const { return (s * sizes + n) * elevations + e; }
};

MonteCarloResult collect(const ScenarioConfig& cfg, const PointLayout& layout, const Accumulator& acc,
                         const std::vector<double>& doppler_hz)
{
    MonteCarloResult result;
    result.scenario_hash = cfg.scenario_hash;
    result.master_seed = cfg.master_seed;
    for (std::size_t s = 0; s < layout.schemes; ++s) {
        for (std::size_t n = 0; n < layout.sizes; ++n) {
            for (std::size_t e = 0; e < layout.elevations; ++e) {
                const auto p = layout.point(s, n, e);
                for (std::size_t j = 0; j < layout.thresholds; ++j) {
                    SweepPoint row;
                    row.scheme = cfg.schemes[s];
                    row.n_elements = cfg.n_elements[n];
                    row.elevation_deg = cfg.elevations_deg[e];
                    row.f_d_hz = doppler_hz[e];
                    row.r_th_bpcu = cfg.rate_thresholds_bpcu[j];
                    row.trials = acc.observations;
                    row.outage_count = acc.outages[p * layout.thresholds + j];
                    row.outage_prob = static_cast<double>(row.outage_count) / static_cast<double>(row.trials);
                    std::tie(row.ci_low, row.ci_high) = confidence_interval(row.outage_count, row.trials);
                    const double mean_snr = acc.snr_sum[p] / static_cast<double>(acc.observations);
                    if (!std::isfinite(mean_snr)) {
                        throw std::runtime_error("non-finite SNR for scheme " + std::string(to_string(row.scheme)) +
                                                 " at N = " + std::to_string(row.n_elements) +
                                                 "; check the link budget");
                    }
                    row.mean_snr_db = snr_to_db(mean_snr);
                    result.rows.push_back(row);
                }
            }
        }
    }
    return result;
}

std::vector<double> doppler_per_elevation(const ScenarioConfig& cfg)
{
    const OrbitSpec orbit(cfg.altitude_km);
    std::vector<double> out;
    for (double e : cfg.elevations_deg) out.push_back(max_doppler_hz(orbit, cfg.carrier_hz, e));
    return out;
}

RisPanel panel_with(const RisPanel& base, std::size_t n)
{
    RisPanel p = base;
    p.n_elements = n;
    return p;
}

}  // namespace

std::string_view to_string(Study study) noexcept
{
    return study == Study::snr_case_study ? "snr_case_study" : "outage_sweep";
}

Study parse_study(std::string_view name)
{
    if (name == "snr_case_study") return Study::snr_case_study;
    if (name == "outage_sweep") return Study::outage_sweep;
    throw std::invalid_argument("unknown study '" + std::string(name) + "'");
}

std::vector<std::string> ScenarioConfig::diagnostics() const
{
    std::vector<std::string> out;
    auto require = [&](bool ok, const std::string& msg) {
        if (!ok) out.push_back(msg);
    };
    auto got = [](double v) {
        std::ostringstream s;
        s << " (got " << v << ")";
        return s.str();
    };
    require(carrier_hz > 0.0, "carrier_hz: must be > 0" + got(carrier_hz));
    require(altitude_km >= OrbitSpec::kMinAltitudeKm && altitude_km <= OrbitSpec::kMaxAltitudeKm,
            "altitude_km: must lie in [200, 36000]" + got(altitude_km));
    require(!elevations_deg.empty(), "elevations_deg: at least one elevation required");
    const double min_elev = study == Study::snr_case_study ? 10.0 : 0.0;
    for (double e : elevations_deg) {
        require(e >= min_elev && e <= 90.0, "elevations_deg: must lie in [" + std::to_string(static_cast<int>(min_elev)) + ", 90]" + got(e));
    }
    require(tx_antennas >= 1, "tx.antennas: must be >= 1");
    require(noise_temperature_k > 0.0, "rx.noise_temperature_k: must be > 0" + got(noise_temperature_k));
    require(n_subcarriers >= 1, "ofdm.n_subcarriers: must be >= 1");
    require(bandwidth_hz > 0.0, "ofdm.bandwidth_hz: must be > 0" + got(bandwidth_hz));
    require(subcarrier_samples >= 1 && subcarrier_samples <= n_subcarriers,
            "ofdm.subcarrier_samples: must lie in [1, n_subcarriers]");
    require(!deterministic_channel ? (fading.b > 0.0 && fading.m > 0.0 && fading.omega >= 0.0) : true,
            "fading: invalid shadowed-Rician parameters");
    try {
        panel_with(panel, 0).validate();
    } catch (const std::exception& e) {
        out.push_back(std::string("ris: ") + e.what());
    }
    require(!n_elements.empty(), "ris.n_elements: at least one panel size required");
    for (std::size_t i = 1; i < n_elements.size(); ++i) {
        require(n_elements[i] > n_elements[i - 1], "ris.n_elements: sweep must be strictly increasing");
    }
    require(clutter_loss_db >= 0.0, "links.clutter_loss_db: must be >= 0" + got(clutter_loss_db));
    require(ris_user_clutter_loss_db >= 0.0, "links.ris_user_clutter_loss_db: must be >= 0" + got(ris_user_clutter_loss_db));
    if (study == Study::snr_case_study) {
        require(ris_altitude_km >= OrbitSpec::kMinAltitudeKm && ris_altitude_km <= OrbitSpec::kMaxAltitudeKm,
                "links.ris_altitude_km: must lie in [200, 36000]" + got(ris_altitude_km));
        require(ris_elevation_deg >= 10.0 && ris_elevation_deg <= 90.0,
                "links.ris_elevation_deg: must lie in [10, 90]" + got(ris_elevation_deg));
        require(isl_distance_km > 0.0, "links.isl_distance_km: must be > 0" + got(isl_distance_km));
    } else {
        require(ris_user_distance_km > 0.0, "links.ris_user_distance_km: must be > 0" + got(ris_user_distance_km));
    }
    try {
        compensation.validate();
    } catch (const std::exception& e) {
        out.push_back(std::string("compensation: ") + e.what());
    }
    require(!rate_thresholds_bpcu.empty(), "outage.rate_thresholds_bpcu: at least one threshold required");
    for (double r : rate_thresholds_bpcu) require(r >= 0.0, "outage.rate_thresholds_bpcu: must be >= 0" + got(r));
    try {
        optimizer.validate();
    } catch (const std::exception& e) {
        out.push_back(std::string("optimizer: ") + e.what());
    }
    require(!schemes.empty(), "schemes: at least one scheme required");
    require(trials >= 1, "monte_carlo.trials: must be >= 1");
    return out;
}

void ScenarioConfig::validate() const
{
    const auto problems = diagnostics();
    if (problems.empty()) return;
    std::ostringstream msg;
    msg << "invalid scenario '" << name << "':";
    for (const auto& p : problems) msg << "\n  " << p;
    throw std::invalid_argument(msg.str());
}

LinkBudget ScenarioConfig::budget() const
{
    return LinkBudget{tx_power_dbw, tx_gain_dbi, rx_gain_dbi, noise_temperature_k, bandwidth_hz};
}

OfdmGrid ScenarioConfig::grid() const { return OfdmGrid(n_subcarriers, bandwidth_hz); }

std::size_t ScenarioConfig::max_elements() const
{
    return n_elements.empty() ? 0 : *std::max_element(n_elements.begin(), n_elements.end());
}

double normal_quantile(double p)
{
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must lie in (0, 1)");
    // Acklam's rational approximation, polished with Newton steps on erfc.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr double low = 0.02425;
    double x;
    if (p < low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    for (int i = 0; i < 2; ++i) {
        const double cdf = 0.5 * std::erfc(-x / std::numbers::sqrt2);
        const double pdf = std::exp(-0.5 * x * x) / std::sqrt(kTwoPi);
        x -= (cdf - p) / pdf;
    }
    return x;
}

std::pair<double, double> confidence_interval(std::size_t successes, std::size_t trials, double level)
{
    if (trials == 0) throw std::domain_error("confidence_interval: trials must be > 0");
    if (successes > trials) throw std::domain_error("confidence_interval: successes exceed trials");
    if (!(level > 0.0 && level < 1.0)) throw std::domain_error("confidence_interval: level must lie in (0, 1)");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z = normal_quantile(0.5 * (1.0 + level));
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    double lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
    double hi = successes == trials ? 1.0 : std::min(1.0, centre + half);
    return {std::min(lo, p), std::max(hi, p)};
}

// -----------------------------------------------------------------------------

CaseStudyChannels::CaseStudyChannels(const ScenarioConfig& cfg) : cfg_(cfg)
{
    if (cfg_.deterministic_channel) {
        isl_amplitude_ = 1.0;
        ris_user_amplitude_ = 1.0;
        ris_user_p_los_ = 1.0;
        return;
    }
    isl_amplitude_ = link_amplitude(cfg_.carrier_hz, cfg_.isl_distance_km, cfg_.tx_gain_dbi, cfg_.ris_element_gain_dbi);
    const double ris_user_km = slant_range_km(OrbitSpec(cfg_.ris_altitude_km), cfg_.ris_elevation_deg);
    ris_user_amplitude_ = link_amplitude(cfg_.carrier_hz, ris_user_km, cfg_.ris_element_gain_dbi, cfg_.rx_gain_dbi);
    ris_user_p_los_ = los_probability(cfg_.ris_elevation_deg, cfg_.environment, cfg_.los_table);
}

CascadedChannel CaseStudyChannels::draw(std::uint64_t trial, double elevation_deg) const
{
    const auto m = static_cast<Eigen::Index>(cfg_.tx_antennas);
    const auto n = static_cast<Eigen::Index>(cfg_.max_elements());
    CascadedChannel ch{CVector::Zero(m), CMatrix::Zero(n, m), CVector::Zero(n)};

    if (cfg_.deterministic_channel) {
        if (cfg_.direct_link) ch.h_direct.setOnes();
        ch.h_sat_ris.setOnes();
        ch.h_ris_user.setOnes();
        return ch;
    }

    // Fixed draw order so every elevation and panel size sees the same randomness.
    auto rng = substream(cfg_.master_seed, kCaseStudyGroup, trial);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    std::uniform_real_distribution<double> spatial(-1.0, 1.0);
    const double u_direct_los = unit(rng);
    const double u_ris_user_los = unit(rng);
    const double user_direction = spatial(rng);
    const double ris_direction = spatial(rng);
    const double direct_phase = phase(rng);
    CVector direct_scatter(m);
    for (Eigen::Index i = 0; i < m; ++i) direct_scatter[i] = sample_rayleigh(1.0, rng);
    CVector ris_array(n);
    CVector ris_user_los(n);
    CVector ris_user_scatter(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        ris_array[i] = std::polar(1.0, phase(rng));
        ris_user_los[i] = std::polar(1.0, phase(rng));
        ris_user_scatter[i] = sample_rayleigh(1.0, rng);
    }

    if (cfg_.direct_link) {
        const double slant = slant_range_km(OrbitSpec(cfg_.altitude_km), elevation_deg);
        const double beta = link_amplitude(cfg_.carrier_hz, slant, cfg_.tx_gain_dbi, cfg_.rx_gain_dbi);
        const double p_los = los_probability(elevation_deg, cfg_.environment, cfg_.los_table);
        if (u_direct_los < p_los) {
            ch.h_direct = beta * std::polar(1.0, direct_phase) * steering_vector(cfg_.tx_antennas, user_direction);
        } else {
            ch.h_direct = beta * amplitude_from_db(-cfg_.clutter_loss_db) * direct_scatter;
        }
    }
    // Inter-satellite hop is free-space line of sight: rank one.
    ch.h_sat_ris = isl_amplitude_ * ris_array * steering_vector(cfg_.tx_antennas, ris_direction).transpose();
    if (u_ris_user_los < ris_user_p_los_) {
        ch.h_ris_user = ris_user_amplitude_ * ris_user_los;
    } else {
        ch.h_ris_user = ris_user_amplitude_ * amplitude_from_db(-cfg_.ris_user_clutter_loss_db) * ris_user_scatter;
    }
    return ch;
}

OutageChannels::OutageChannels(const ScenarioConfig& cfg) : cfg_(cfg)
{
    if (cfg_.deterministic_channel) {
        ris_user_amplitude_ = 1.0;
        direct_ratio_ = 1.0;
        return;
    }
    ris_user_amplitude_ =
        link_amplitude(cfg_.carrier_hz, cfg_.ris_user_distance_km, cfg_.ris_element_gain_dbi, cfg_.rx_gain_dbi);
    // direct amplitude relative to the satellite->RIS amplitude at the same slant range
    direct_ratio_ = amplitude_from_db(cfg_.rx_gain_dbi - cfg_.ris_element_gain_dbi - cfg_.clutter_loss_db);
}

double OutageChannels::satellite_amplitude(double elevation_deg) const
{
    if (cfg_.deterministic_channel) return 1.0;
    const double slant = slant_range_km(OrbitSpec(cfg_.altitude_km), elevation_deg);
    return link_amplitude(cfg_.carrier_hz, slant, cfg_.tx_gain_dbi, cfg_.ris_element_gain_dbi);
}

std::vector<CascadedChannel> OutageChannels::draw(std::uint64_t trial) const
{
    const auto m = static_cast<Eigen::Index>(cfg_.tx_antennas);
    const auto n = static_cast<Eigen::Index>(cfg_.max_elements());
    std::vector<CascadedChannel> out;
    out.reserve(cfg_.subcarrier_samples);
    auto rng = substream(cfg_.master_seed, kOutageGroup, trial);
    for (std::size_t s = 0; s < cfg_.subcarrier_samples; ++s) {
        CascadedChannel ch{CVector::Zero(m), CMatrix::Zero(n, m), CVector::Zero(n)};
        if (cfg_.deterministic_channel) {
            if (cfg_.direct_link) ch.h_direct.setOnes();
            ch.h_sat_ris.setOnes();
            ch.h_ris_user.setOnes();
            out.push_back(std::move(ch));
            continue;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) ch.h_sat_ris(i, j) = sample_shadowed_rician(cfg_.fading, rng);
            ch.h_ris_user[i] = ris_user_amplitude_ * sample_rayleigh(1.0, rng);
        }
        if (cfg_.direct_link) {
            for (Eigen::Index j = 0; j < m; ++j) {
                ch.h_direct[j] = direct_ratio_ * sample_shadowed_rician(cfg_.fading, rng);
            }
        }
        out.push_back(std::move(ch));
    }
    return out;
}

// -----------------------------------------------------------------------------

MonteCarloResult run_outage_sweep(const ScenarioConfig& cfg, const RunOptions& options)
{
    if (cfg.trials == 0) throw std::domain_error("run_outage_sweep: trials must be > 0");
    cfg.validate();
    const LinkBudget budget = cfg.budget();
    if (!(budget.noise_power_w() > 0.0)) throw std::invalid_argument("run_outage_sweep: noise power must be > 0");
    const OfdmGrid grid = cfg.grid();
    const OutageChannels channels(cfg);
    const auto doppler = doppler_per_elevation(cfg);

    std::vector<double> epsilon;
    std::vector<double> sat_amplitude;
    for (std::size_t e = 0; e < cfg.elevations_deg.size(); ++e) {
        epsilon.push_back(wrap_cfo(residual_cfo(doppler[e], grid, cfg.compensation)));
        sat_amplitude.push_back(channels.satellite_amplitude(cfg.elevations_deg[e]));
    }
    const SincIciModel ici;
    const PointLayout layout{cfg.schemes.size(), cfg.n_elements.size(), cfg.elevations_deg.size(),
                             cfg.rate_thresholds_bpcu.size()};

    auto body = [&](std::size_t first, std::size_t last, Accumulator& acc) {
        for (std::size_t t = first; t < last; ++t) {
            for (const auto& full : channels.draw(t)) {
                ++acc.observations;
                for (std::size_t k = 0; k < cfg.n_elements.size(); ++k) {
                    const auto ch = full.leading_elements(cfg.n_elements[k]);
                    const auto panel = panel_with(cfg.panel, cfg.n_elements[k]);
                    for (std::size_t s = 0; s < cfg.schemes.size(); ++s) {
                        const auto sol = run_scheme(cfg.schemes[s], ch, panel, budget, cfg.optimizer);
                        // the optimum is scale invariant, so one solve serves every elevation
                        for (std::size_t e = 0; e < epsilon.size(); ++e) {
                            const Complex g = sol.g * sat_amplitude[e];
                            const double snr = cfg.schemes[s] == Scheme::without_ris
                                                   ? received_snr_linear(g, budget)
                                                   : received_snr_linear(g, budget, panel, sol.ris, ch);
                            if (!std::isfinite(snr)) {
                                throw std::runtime_error("non-finite SNR at N = " + std::to_string(cfg.n_elements[k]) +
                                                         "; check the link budget");
                            }
                            const double rate = achievable_rate(ici.sinr(snr, epsilon[e]));
                            const auto p = layout.point(s, k, e);
                            acc.snr_sum[p] += snr;
                            for (std::size_t j = 0; j < layout.thresholds; ++j) {
                                if (outage_indicator(rate, OutageSpec{cfg.rate_thresholds_bpcu[j]})) {
                                    ++acc.outages[p * layout.thresholds + j];
                                }
                            }
                        }
                    }
                }
            }
        }
    };
    const auto acc = run_chunks(cfg.trials, options, layout.points(), layout.thresholds, body);
    return collect(cfg, layout, acc, doppler);
}

MonteCarloResult run_snr_case_study(const ScenarioConfig& cfg, const RunOptions& options)
{
    if (cfg.trials == 0) throw std::domain_error("run_snr_case_study: trials must be > 0");
    cfg.validate();
    const LinkBudget budget = cfg.budget();
    if (!(budget.noise_power_w() > 0.0)) throw std::invalid_argument("run_snr_case_study: noise power must be > 0");
    const CaseStudyChannels channels(cfg);
    const auto doppler = doppler_per_elevation(cfg);
    const PointLayout layout{cfg.schemes.size(), cfg.n_elements.size(), cfg.elevations_deg.size(),
                             cfg.rate_thresholds_bpcu.size()};

    auto body = [&](std::size_t first, std::size_t last, Accumulator& acc) {
        for (std::size_t t = first; t < last; ++t) {
            ++acc.observations;
            for (std::size_t e = 0; e < cfg.elevations_deg.size(); ++e) {
                const auto full = channels.draw(t, cfg.elevations_deg[e]);
                for (std::size_t k = 0; k < cfg.n_elements.size(); ++k) {
                    const auto ch = full.leading_elements(cfg.n_elements[k]);
                    const auto panel = panel_with(cfg.panel, cfg.n_elements[k]);
                    for (std::size_t s = 0; s < cfg.schemes.size(); ++s) {
                        const auto sol = run_scheme(cfg.schemes[s], ch, panel, budget, cfg.optimizer);
                        const auto p = layout.point(s, k, e);
                        acc.snr_sum[p] += sol.snr_linear;
                        const double rate = achievable_rate(sol.snr_linear);
                        for (std::size_t j = 0; j < layout.thresholds; ++j) {
                            if (outage_indicator(rate, OutageSpec{cfg.rate_thresholds_bpcu[j]})) {
                                ++acc.outages[p * layout.thresholds + j];
                            }
                        }
                    }
                }
            }
        }
    };
    const auto acc = run_chunks(cfg.trials, options, layout.points(), layout.thresholds, body);
    return collect(cfg, layout, acc, doppler);
}

MonteCarloResult run_study(const ScenarioConfig& cfg, const RunOptions& options)
{
    return cfg.study == Study::snr_case_study ? run_snr_case_study(cfg, options) : run_outage_sweep(cfg, options);
}

}  // namespace leoris
